"""Command-line entry point: ``kisindd <subcommand> ...``.

Every run prints one JSON document {"status", "payload", "diagnostics"} on
stdout and exits with 0 (ok), 1 (violation) or 2 (error). With ``--dot`` the
poset-producing subcommands print DOT text instead.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .decompose import cartan_position, iwahori_reduce, min_double_coset_rep, smith_normal_form
from .errors import KisinError
from .hodge import hodge_position
from .kisin import (check_height, compute_type, lambda_from_mu, shape, stratum_membership,
                    validate)
from .serialize import hodge_from_json, load_json, matrix_from_json, module_from_json
from .strata import export_poset, irreducible_components, strata_poset
from .tame import TameType, orientations, parabolic_blocks
from .weyl import (AffinePermutation, BlockPartition, admissible_set, bruhat_leq, covers_below,
                   length, orbit, parahoric_admissible_set, reflection_bound)

EXIT = {"ok": 0, "violation": 1, "error": 2}

MATRIX_SCHEMA = """\
matrix JSON:
  {"field": {"p": P, "m": M, "poly": [c0, ..., cM]}, "var": "u", "precision": N,
   "entries": [[ [[exp, [coeffs]], ...], ... ], ...]}
  entries[i][k] is a sparse list of [exponent, coefficient vector] pairs."""

MODULE_SCHEMA = """\
module JSON:
  {"p": P, "f": F, "n": N, "e_K": 1, "height": H, "field": {...}, "precision": N_u,
   "exponents": [a1, ..., an], "orientation": [[s_0 one-line], ..., [s_{f-1}]],
   "frobenius": [entries of C^(0) in v, ..., entries of C^(f-1)]}
  C^(j) maps component j-1 to j; column k is the image of the k-th basis vector.
  precision is in powers of u = v^(p^f-1)."""

HODGE_SCHEMA = """\
hodge JSON:
  {"p": P, "f": F, "n": N, "mu": [[mu_0], ..., [mu_{f-1}]],
   "matrices": [[[ [c0, c1, ...] (coefficients in u; ints or "a/b") ]]]}"""


@dataclass
class CommandResult:
    status: str
    payload: object = None
    diagnostics: list = field(default_factory=list)
    text: str | None = None

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]

    def render(self) -> str:
        if self.text is not None:
            return self.text
        return json.dumps({"status": self.status, "payload": self.payload,
                           "diagnostics": self.diagnostics}, indent=2) + "\n"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _mu(text: str) -> list[list[list[int]]]:
    """'1,0|1,0' -> one cocharacter per j; ';' separates embeddings psi within a j."""
    return [[_ints(v) for v in group.split(";")] for group in text.split("|")]


def _orientation(text: str) -> list[list[int]]:
    return [_ints(s) for s in text.split("|")]


def _pick_orientation(tau: TameType, text: str | None):
    if text is not None:
        return _orientation(text)
    choices = orientations(tau)
    if len(choices) > 1:
        raise UsageError(f"the type has {len(choices)} orientations; choose one with --orientation")
    return choices[0]


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.RawDescriptionHelpFormatter
    parser = _Parser(prog="kisindd", description="Kisin modules with tame descent data: "
                     "admissible sets, orientations, shapes, strata and Hodge positions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("adm", formatter_class=fmt, help="admissible set Adm(lambda) or Adm_P(lambda)",
                       epilog="output: payload is a list of {window, length, maximal}, sorted by window.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True, help="comma-separated cocharacter")
    p.add_argument("--blocks", help='block partition such as "1,2|3" (default: all singletons)')
    p.add_argument("--dot", action="store_true", help="print the Hasse diagram in DOT format")

    p = sub.add_parser("orient", formatter_class=fmt, help="twisted exponents, orientations, blocks",
                       epilog="output: {twisted: per-j vectors, orientations: list of per-j permutations, "
                              "blocks: per-j partitions (only when the orientation is unique)}.")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--exponents", required=True)

    p = sub.add_parser("validate", formatter_class=fmt, help="check descent, type, height and diagram",
                       epilog=MODULE_SCHEMA)
    p.add_argument("file")

    p = sub.add_parser("shape", formatter_class=fmt, help="shape of a module (and stratum membership)",
                       epilog=MODULE_SCHEMA + '\n--mu uses "|" between embeddings j and ";" between psi.')
    p.add_argument("file")
    p.add_argument("--mu", help="optional bound; reports stratum membership")

    p = sub.add_parser("strata", formatter_class=fmt, help="KR strata poset for (mu, tau)",
                       epilog='--mu: "|" separates embeddings j, ";" separates psi within a j.\n'
                              "output: {nodes: [{label, windows, dims, dim, maximal}], edges: [{source, target}], "
                              "components}.")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e_K", type=int, default=1)
    p.add_argument("--mu", required=True)
    p.add_argument("--exponents", required=True)
    p.add_argument("--orientation", help='per-j permutations, e.g. "2,1|1,2"; required if not unique')
    p.add_argument("--dot", action="store_true")

    p = sub.add_parser("cartan", formatter_class=fmt, help="Smith form, Cartan and Iwahori position",
                       epilog=MATRIX_SCHEMA)
    p.add_argument("file")
    p.add_argument("--blocks", help="also report the parahoric double coset")

    p = sub.add_parser("hodge", formatter_class=fmt, help="relative position at u = p (e_K = 1)",
                       epilog=HODGE_SCHEMA)
    p.add_argument("file")
    return parser


# -- subcommands ----------------------------------------------------------------

def _adm_edges(elements):
    """Hasse edges (upper, lower) of a set ordered by Bruhat order."""
    by_window = sorted(elements)
    out = []
    for a in by_window:
        lower = [b for b in by_window if b != a and bruhat_leq(b, a)]
        for b in lower:
            if not any(c != b and bruhat_leq(b, c) for c in lower):
                out.append((a, b))
    return out


def cmd_adm(args) -> CommandResult:
    lam = _ints(args.lam)
    if len(lam) != args.n:
        raise UsageError(f"--lambda has {len(lam)} entries, expected n = {args.n}")
    if args.blocks:
        blocks = BlockPartition.parse(args.blocks)
        if blocks.n != args.n:
            raise UsageError("--blocks does not partition 1..n")
        elems = parahoric_admissible_set(lam, blocks)
        tops = {min_double_coset_rep(AffinePermutation.translation(x), blocks) for x in orbit(lam)}
    else:
        elems = admissible_set(lam)
        tops = {AffinePermutation.translation(x) for x in orbit(lam)}
    elems = sorted(elems)
    if args.dot:
        lines = ["digraph adm {", "  rankdir=BT;"]
        for w in elems:
            name = ",".join(map(str, w.window))
            lines.append(f'  "{name}" [label="[{name}]\\nl={length(w)}"{", shape=box" if w in tops else ""}];')
        for a, b in _adm_edges(elems):
            lines.append(f'  "{",".join(map(str, b.window))}" -> "{",".join(map(str, a.window))}";')
        lines.append("}")
        return CommandResult("ok", text="\n".join(lines) + "\n")
    payload = [{"window": list(w.window), "length": length(w), "maximal": w in tops} for w in elems]
    return CommandResult("ok", payload)


def cmd_orient(args) -> CommandResult:
    tau = TameType(args.p, args.f, _ints(args.exponents))
    os_ = orientations(tau)
    payload = {"exponents": list(tau.exponents),
               "twisted": [list(tau.twisted_exponents(j)) for j in range(tau.f)],
               "orientations": [[list(s) for s in o] for o in os_],
               "orientation_names": [o.format() for o in os_],
               "unique": len(os_) == 1,
               "blocks": [parabolic_blocks(tau, os_[0], j).format() for j in range(tau.f)]}
    return CommandResult("ok", payload)


def cmd_validate(args) -> CommandResult:
    M = module_from_json(load_json(args.file))
    report = validate(M)
    diagnostics = report.pop("diagnostics")
    return CommandResult("ok" if report["valid"] else "violation", report, diagnostics)


def cmd_shape(args) -> CommandResult:
    M = module_from_json(load_json(args.file))
    payload = {"shape": [list(w.window) for w in shape(M)],
               "blocks": [M.blocks(j).format() for j in range(M.f)]}
    status = "ok"
    if args.mu:
        mem = stratum_membership(M, _mu(args.mu))
        payload["membership"] = mem
        if not mem["member"]:
            status = "violation"
    return CommandResult(status, payload)


def cmd_strata(args) -> CommandResult:
    tau = TameType(args.p, args.f, _ints(args.exponents))
    if tau.n != args.n:
        raise UsageError(f"--exponents has {tau.n} entries, expected n = {args.n}")
    mu = _mu(args.mu)
    if any(len(m) != args.e_K for m in mu):
        raise UsageError(f"each embedding needs e_K = {args.e_K} cocharacters")
    P = strata_poset(mu, tau, _pick_orientation(tau, args.orientation))
    if args.dot:
        return CommandResult("ok", text=export_poset(P, "dot"))
    payload = json.loads(export_poset(P, "json"))
    payload["components"] = [P.label(x) for x in irreducible_components(P)]
    payload["lambdas"] = [list(l) for l in lambda_from_mu(mu)]
    return CommandResult("ok", payload)


def cmd_cartan(args) -> CommandResult:
    M = matrix_from_json(load_json(args.file))
    divisors, _, _ = smith_normal_form(M)
    payload = {"divisors": list(divisors), "cartan": list(cartan_position(M)),
               "iwahori": list(iwahori_reduce(M).window)}
    if args.blocks:
        blocks = BlockPartition.parse(args.blocks)
        payload["parahoric"] = list(min_double_coset_rep(iwahori_reduce(M), blocks).window)
    return CommandResult("ok", payload)


def cmd_hodge(args) -> CommandResult:
    H = hodge_from_json(load_json(args.file))
    report = hodge_position(H)
    return CommandResult("ok" if report.ok else "violation", report.to_json())


COMMANDS = {"adm": cmd_adm, "orient": cmd_orient, "validate": cmd_validate, "shape": cmd_shape,
            "strata": cmd_strata, "cartan": cmd_cartan, "hodge": cmd_hodge}


def run(argv) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        return CommandResult("error", None, [str(exc)])
    except (KisinError, ValueError, OSError) as exc:
        return CommandResult("error", None, [f"{type(exc).__name__}: {exc}"])


def main(argv=None) -> int:
    result = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(result.render())
    return result.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
