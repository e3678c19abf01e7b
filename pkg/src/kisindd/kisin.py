"""Kisin modules with tame descent data over a finite field, in an eigenbasis.

Conventions
-----------
* ``frobenius[j]`` is the matrix C^(j) of the linearized Frobenius from
  component j-1 to component j (indices mod f). Column k is the image of
  1 (x) f_k^(j-1), expanded in the basis f^(j).
* A generator of Delta acts on v in component j by zeta^(p^(f-j)), where zeta
  is a fixed primitive (p^f - 1)-th root of unity, and on f_i^(j) by
  zeta^(b_i^(j)). By default b^(j) is the declared exponent vector.
* With these choices the descent condition on C^(j) reads: entry (i, k) is
  supported on v-exponents m = a_k^(j) - a_i^(j) mod (p^f - 1).
* u = v^(p^f - 1). Precisions of modules are quoted in powers of u.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .decompose import (in_parahoric, invert_matrix, monomial_matrix, parahoric_reduce,
                        smith_normal_form)
from .errors import (CommutationFailure, DescentViolation, DimensionMismatch, FieldTooSmall,
                     NotInLoopGroup, PrecisionExhausted, ShapeMismatch, TypeMismatch)
from .fields import FieldSpec, is_irreducible
from .matrix import SeriesMatrix
from .sampling import random_parahoric
from .series import TruncSeries
from .tame import Orientation, TameType, check_orientation, parabolic_blocks, type_multiset
from .weyl import (AffinePermutation, BlockPartition, min_double_coset_rep, orbit,
                   parahoric_admissible_set)


def default_precision(f: int, e_K: int, height: int) -> int:
    """u-adic working precision: e*h + 16 with e = f*e_K, unless KISIN_PRECISION is set."""
    env = os.environ.get("KISIN_PRECISION")
    if env:
        return int(env)
    return f * e_K * height + 16


def default_field(p: int, f: int) -> FieldSpec:
    """F_{p^f} with the first monic irreducible polynomial in lexicographic order."""
    if f == 1:
        return FieldSpec.prime(p)
    import itertools
    for tail in itertools.product(range(p), repeat=f):
        poly = list(tail) + [1]
        if poly[0] and is_irreducible(poly, p):
            return FieldSpec(p, f, tuple(poly))
    raise AssertionError("unreachable")  # pragma: no cover


class KisinModuleDD:
    """Frobenius matrices C^(0..f-1) in an eigenbasis plus type, orientation and height."""

    def __init__(self, tau: TameType, field: FieldSpec, frobenius: Sequence[SeriesMatrix],
                 orientation: Sequence[Sequence[int]], e_K: int = 1, height: int = 1,
                 precision: int | None = None, characters: Sequence[Sequence[int]] | None = None):
        if field.p != tau.p:
            raise ValueError(f"field characteristic {field.p} differs from p = {tau.p}")
        frobenius = tuple(frobenius)
        if len(frobenius) != tau.f:
            raise DimensionMismatch(f"expected f = {tau.f} Frobenius matrices, got {len(frobenius)}")
        for C in frobenius:
            if C.n != tau.n:
                raise DimensionMismatch(f"Frobenius matrix of size {C.n}, type of rank {tau.n}")
            if C.var != "v" or C.field != field:
                raise ValueError("Frobenius matrices must be series matrices in v over the module's field")
        if e_K < 1 or height < 0:
            raise ValueError("need e_K >= 1 and height >= 0")
        self.tau = tau
        self.field = field
        self.frobenius = frobenius
        self.orientation = check_orientation(tau, orientation)
        self.e_K = e_K
        self.height = height
        self.precision = precision if precision is not None else default_precision(tau.f, e_K, height)
        if characters is None:
            self.characters = None
        else:
            chars = tuple(tuple(int(x) for x in c) for c in characters)
            if len(chars) != tau.f or any(len(c) != tau.n for c in chars):
                raise DimensionMismatch("characters must give n exponents for each of the f components")
            self.characters = chars

    @property
    def n(self) -> int:
        return self.tau.n

    @property
    def f(self) -> int:
        return self.tau.f

    @property
    def order(self) -> int:
        return self.tau.order

    def chars(self, j: int) -> tuple[int, ...]:
        if self.characters is None:
            return self.tau.exponents
        return self.characters[j % self.f]

    def blocks(self, j: int) -> BlockPartition:
        return parabolic_blocks(self.tau, self.orientation, j)

    def replace(self, frobenius, precision=None) -> "KisinModuleDD":
        return KisinModuleDD(self.tau, self.field, frobenius, self.orientation, self.e_K,
                             self.height, self.precision if precision is None else precision,
                             self.characters)


# -- descent --------------------------------------------------------------------

@dataclass
class DescentReport:
    fast_ok: bool
    direct_ok: bool
    fast_violations: list = dc_field(default_factory=list)
    direct_violations: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.fast_ok and self.direct_ok

    @property
    def agree(self) -> bool:
        return self.fast_ok == self.direct_ok and self.fast_violations == self.direct_violations

    def to_json(self) -> dict:
        fmt = lambda vs: [{"j": j, "i": i, "k": k, "m": m} for j, i, k, m in vs]
        return {"fast_ok": self.fast_ok, "direct_ok": self.direct_ok, "agree": self.agree,
                "fast_violations": fmt(self.fast_violations),
                "direct_violations": fmt(self.direct_violations)}


def _required_residue(M: KisinModuleDD, j: int, i: int, k: int) -> int:
    """Residue mod p^f-1 of the allowed v-exponents of entry (i, k) of C^(j), 0-based i, k."""
    bj, bprev = M.chars(j), M.chars(j - 1)
    return pow(M.tau.p, j, M.order) * (bprev[k] - bj[i]) % M.order


def descent_fast(M: KisinModuleDD) -> list[tuple[int, int, int, int]]:
    """Exponent-support congruence; returns (j, i, k, m) with 1-based i, k."""
    out = []
    for j, C in enumerate(M.frobenius):
        for i, k, x in C.entries():
            r = _required_residue(M, j, i, k)
            for m in x.exponents():
                if (m - r) % M.order:
                    out.append((j, i + 1, k + 1, m))
    return out


def descent_direct(M: KisinModuleDD, zeta: int | None = None) -> list[tuple[int, int, int, int]]:
    """Apply the generator to both sides of g.phi = phi.g on each basis vector.

    g(phi(f_k)) = sum_i zeta^(b_i) C_ik(zeta_j v) f_i and phi(g(f_k)) =
    zeta^(b_k) sum_i C_ik(v) f_i, with zeta_j = zeta^(p^(f-j)).
    """
    F, p, f = M.field, M.tau.p, M.f
    if (F.q - 1) % M.order:
        raise FieldTooSmall(f"F_{F.q} contains no primitive {M.order}-th root of unity")
    if zeta is None:
        zeta = F.primitive_root_of_unity(M.order)
    out = []
    for j, C in enumerate(M.frobenius):
        zj = F.power(zeta, p ** ((f - j) % f))
        bj, bprev = M.chars(j), M.chars(j - 1)
        for k in range(M.n):
            lam_k = F.power(zeta, bprev[k])
            for i in range(M.n):
                x = C[i, k]
                lhs = x.scale_variable(zj).scale(F.power(zeta, bj[i]))
                rhs = x.scale(lam_k)
                diff = lhs - rhs
                for m in diff.exponents():
                    out.append((j, i + 1, k + 1, m))
    out.sort()
    return out


def validate_descent(M: KisinModuleDD) -> DescentReport:
    fast = sorted(descent_fast(M))
    direct = descent_direct(M)
    return DescentReport(not fast, not direct, fast, direct)


# -- isotypic matrices ----------------------------------------------------------

def _sorted_twist(M: KisinModuleDD, j: int):
    a = M.tau.twisted_exponents(j)
    s = [x - 1 for x in M.orientation[j % M.f]]
    return a, s


def _to_u(x: TruncSeries, shift: int, order: int, where) -> TruncSeries:
    """v^shift * x rewritten as a series in u = v^order."""
    terms = {}
    for m, c in x.terms.items():
        e = m + shift
        if e < 0 or e % order:
            raise DescentViolation(f"entry {where} has v-exponent {m}, not of the form "
                                   f"{order}*k - ({shift})")
        terms[e // order] = c
    prec = -(-(x.prec + shift) // order)
    return TruncSeries(x.field, terms, prec, "u")


def _to_v(x: TruncSeries, shift: int, order: int) -> TruncSeries:
    """v^shift * x(u = v^order) as a series in v."""
    terms = {e * order + shift: c for e, c in x.terms.items()}
    return TruncSeries(x.field, terms, x.prec * order + shift, "v")


def isotypic_matrix(M: KisinModuleDD, j: int) -> SeriesMatrix:
    """A^(j)_{ik} = v^(a_{s(i)} - a_{s(k)}) C^(j)_{s(i) s(k)} as a u-series (a = a^(j), s = s_j)."""
    a, s = _sorted_twist(M, j)
    C = M.frobenius[j % M.f]
    n = M.n
    rows = [[_to_u(C[s[i], s[k]], a[s[i]] - a[s[k]], M.order, (j, s[i] + 1, s[k] + 1))
             for k in range(n)] for i in range(n)]
    return SeriesMatrix(rows)


def from_isotypic(A: SeriesMatrix, a: Sequence[int], s: Sequence[int], order: int) -> SeriesMatrix:
    """Inverse of :func:`isotypic_matrix`: C_{s(i) s(k)} = v^(a_{s(k)} - a_{s(i)}) A_{ik}(v^order).

    ``s`` is 0-based here.
    """
    n = A.n
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            x = _to_v(A[i, k], a[s[k]] - a[s[i]], order)
            if x.valuation() is not None and x.valuation() < 0:
                raise NotInLoopGroup("matrix is not block upper triangular mod u")
            out[s[i]][s[k]] = x
    return SeriesMatrix(out)


# -- diagram (3.1) --------------------------------------------------------------

@dataclass
class IsotypicDiagram:
    """Rows of isotypic pieces for component j, chained chi_{s(n)} -> chi_{s(1)} -> ... -> chi_{s(n)}.

    ``vertical[t]`` is the Frobenius on the chi_{s(t+1)} piece (0-based t);
    ``horizontal[t]`` lists the u-exponents of the diagonal map into piece t,
    so horizontal[0] is the first map chi_{s(n)} -> chi_{s(1)}.
    """
    j: int
    vertical: list
    horizontal: list
    v_exponents: list

    def row_composite(self) -> list[int]:
        return [sum(h[i] for h in self.horizontal) for i in range(len(self.horizontal[0]))]


def build_diagram(M: KisinModuleDD, j: int) -> IsotypicDiagram:
    a, s = _sorted_twist(M, j)
    n, order = M.n, M.order
    C = M.frobenius[j % M.f]
    e = [[(a[s[t]] - a[s[i]]) % order for t in range(n)] for i in range(n)]
    vertical = []
    for t in range(n):
        rows = []
        for i in range(n):
            row = []
            for k in range(n):
                try:
                    row.append(_to_u(C[s[i], s[k]], e[k][t] - e[i][t], order, (j, s[i] + 1, s[k] + 1)))
                except DescentViolation as exc:
                    raise CommutationFailure(f"square {t + 1} of component {j}: {exc}") from None
            rows.append(row)
        vertical.append(SeriesMatrix(rows))
    # multiplication maps: into piece t from piece t-1 (piece -1 = piece n-1)
    deltas = [order - a[s[n - 1]] + a[s[0]]] + [a[s[t]] - a[s[t - 1]] for t in range(1, n)]
    horizontal = []
    for t in range(n):
        src = (t - 1) % n
        exps = []
        for i in range(n):
            num = deltas[t] + e[i][src] - e[i][t]
            if num % order or num < 0:
                raise CommutationFailure(f"map into piece {t + 1} of component {j} is not a power of u")
            exps.append(num // order)
        horizontal.append(exps)
    D = IsotypicDiagram(j, vertical, horizontal, deltas)
    check_diagram(D)
    return D


def check_diagram(D: IsotypicDiagram) -> None:
    n = len(D.vertical)
    for t in range(n):
        src = (t - 1) % n
        Phi_s, Phi_t = D.vertical[src], D.vertical[t]
        F, prec = Phi_s.field, min(Phi_s.prec, Phi_t.prec)
        H = SeriesMatrix.diagonal(F, D.horizontal[t], prec + 1)
        if not (H @ Phi_s).congruent(Phi_t @ H):
            raise CommutationFailure(f"square {t + 1} of component {D.j} does not commute")
    if D.row_composite() != [1] * len(D.horizontal[0]):
        raise CommutationFailure(f"row of component {D.j} does not compose to u")


# -- eigenbasis change and shape --------------------------------------------------

def change_eigenbasis(M: KisinModuleDD, g: Sequence[SeriesMatrix]) -> KisinModuleDD:
    """Act by g^(j) in L+P_j on the isotypic trivializations.

    The eigenbasis of component j changes by B^(j) = from_isotypic(g^(j)), and
    C'^(j) = B^(j)^-1 C^(j) phi(B^(j-1)) with phi: v -> v^p.
    """
    if len(g) != M.f:
        raise DimensionMismatch(f"need {M.f} loop-group elements, got {len(g)}")
    B, Binv = [], []
    for j, gj in enumerate(g):
        if gj.n != M.n:
            raise DimensionMismatch("loop-group element of the wrong size")
        if not in_parahoric(gj, M.blocks(j)):
            raise NotInLoopGroup(f"g^({j}) is not in L+P_{j} for blocks {M.blocks(j).format()}")
        a, s = _sorted_twist(M, j)
        B.append(from_isotypic(gj, a, s, M.order))
        Binv.append(from_isotypic(invert_matrix(gj), a, s, M.order))
    p = M.tau.p
    new = []
    for j in range(M.f):
        phiB = B[j - 1].map(lambda x: x.substitute_power(p))
        new.append(Binv[j] @ M.frobenius[j] @ phiB)
    prec = min(M.precision, min(C.prec for C in new) // M.order)
    return M.replace(new, precision=prec)


def shape(M: KisinModuleDD) -> tuple[AffinePermutation, ...]:
    return tuple(parahoric_reduce(isotypic_matrix(M, j), M.blocks(j)) for j in range(M.f))


def check_height(M: KisinModuleDD) -> list[tuple[int, ...]]:
    """Elementary divisors of each A^(j); they must lie in [0, e_K*h]."""
    out = []
    top = M.e_K * M.height
    for j in range(M.f):
        d, _, _ = smith_normal_form(isotypic_matrix(M, j))
        out.append(d)
    bad = [(j, d) for j, d in enumerate(out) if d and (min(d) < 0 or max(d) > top)]
    return out, bad


def compute_type(M: KisinModuleDD) -> list[tuple[int, ...]]:
    declared = type_multiset(M.tau.exponents, M.order)
    out = []
    for j in range(M.f):
        got = type_multiset(M.chars(j), M.order)
        if got != declared:
            raise TypeMismatch(f"component {j} has characters {list(got)}, declared type {list(declared)}")
        out.append(got)
    return out


def validate(M: KisinModuleDD) -> dict:
    """Full report: descent (both paths), type, height and diagram."""
    diagnostics = []
    report = validate_descent(M)
    out = {"descent": report.to_json()}
    if not report.agree:
        diagnostics.append("fast and direct descent checks disagree")
    try:
        out["type"] = [list(t) for t in compute_type(M)]
        type_ok = True
    except TypeMismatch as exc:
        out["type"] = None
        diagnostics.append(str(exc))
        type_ok = False
    height_ok = diagram_ok = False
    if report.ok:
        divisors, bad = check_height(M)
        out["divisors"] = [list(d) for d in divisors]
        height_ok = not bad
        for j, d in bad:
            diagnostics.append(f"component {j}: elementary divisors {list(d)} outside [0, {M.e_K * M.height}]")
        try:
            for j in range(M.f):
                build_diagram(M, j)
            diagram_ok = True
        except CommutationFailure as exc:
            diagnostics.append(str(exc))
    else:
        for j, i, k, m in report.fast_violations[:10]:
            diagnostics.append(f"C^({j}) entry ({i},{k}) has exponent {m} off the required residue class")
    out["height_ok"] = height_ok
    out["diagram_ok"] = diagram_ok
    out["valid"] = report.ok and type_ok and height_ok and diagram_ok
    out["diagnostics"] = diagnostics
    return out


# -- strata -----------------------------------------------------------------------

def lambda_from_mu(mu: Sequence[Sequence[Sequence[int]]]) -> tuple[tuple[int, ...], ...]:
    """lambda_j = sum over psi of mu_{j, psi}."""
    if not mu:
        raise ShapeMismatch("empty cocharacter data")
    counts = {len(m) for m in mu}
    if len(counts) != 1 or 0 in counts:
        raise ShapeMismatch("every embedding j needs the same positive number of cocharacters")
    lengths = {len(v) for m in mu for v in m}
    if len(lengths) != 1:
        raise ShapeMismatch("cocharacters of different lengths")
    return tuple(tuple(sum(col) for col in zip(*m)) for m in mu)


def stratum_membership(M: KisinModuleDD, mu) -> dict:
    lams = lambda_from_mu(mu)
    if len(lams) != M.f or len(lams[0]) != M.n:
        raise ShapeMismatch(f"mu must give {M.f} cocharacters of length {M.n}")
    if len(mu[0]) != M.e_K:
        raise ShapeMismatch(f"expected e_K = {M.e_K} cocharacters per embedding")
    per_j = []
    shp = shape(M)
    for j, (w, lam) in enumerate(zip(shp, lams)):
        blocks = M.blocks(j)
        adm = parahoric_admissible_set(lam, blocks)
        tops = {min_double_coset_rep(AffinePermutation.translation(x), blocks) for x in orbit(lam)}
        per_j.append({"j": j, "lambda": list(lam), "shape": list(w.window), "member": w in adm,
                      "maximal": w in tops})
    return {"member": all(x["member"] for x in per_j), "label": [list(w.window) for w in shp],
            "per_j": per_j}


# -- random modules -----------------------------------------------------------------

def _block_upper_mod_u(w: AffinePermutation, blocks: BlockPartition) -> bool:
    owner = [b for b, blk in enumerate(blocks.blocks) for _ in blk]
    n = w.n
    for r, s in enumerate(w.window):
        k, c = divmod(s - 1, n)
        if k < 0 or (k == 0 and owner[r] > owner[c]):
            return False
    return True


def random_shape(n: int, top: int, blocks: BlockPartition, rng: random.Random) -> AffinePermutation:
    """Random w = t_lam * perm, lam in [0, top]^n, whose matrix is block upper mod u."""
    while True:
        lam = [rng.randint(0, top) for _ in range(n)]
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        w = AffinePermutation.from_parts(lam, perm)
        if _block_upper_mod_u(w, blocks):
            return w


def module_from_isotypic(tau: TameType, field: FieldSpec, orientation, A: Sequence[SeriesMatrix],
                         e_K: int = 1, height: int = 1, precision: int | None = None) -> KisinModuleDD:
    orientation = check_orientation(tau, orientation)
    frob = []
    for j, Aj in enumerate(A):
        a = tau.twisted_exponents(j)
        s = [x - 1 for x in orientation[j]]
        frob.append(from_isotypic(Aj, a, s, tau.order))
    if precision is None:
        precision = min(x.prec for x in A)
    return KisinModuleDD(tau, field, frob, orientation, e_K, height, precision)


def random_module(tau: TameType, orientation, rng: random.Random, field: FieldSpec | None = None,
                  e_K: int = 1, height: int = 1, precision: int | None = None):
    """A valid module built as p1 * w * p2 in isotypic coordinates; returns (module, [w_j])."""
    if field is None:
        field = default_field(tau.p, tau.f)
    if precision is None:
        precision = default_precision(tau.f, e_K, height)
    orientation = check_orientation(tau, orientation)
    A, ws = [], []
    for j in range(tau.f):
        blocks = parabolic_blocks(tau, orientation, j)
        w = random_shape(tau.n, e_K * height, blocks, rng)
        p1 = random_parahoric(field, blocks, precision, rng)
        p2 = random_parahoric(field, blocks, precision, rng)
        A.append(p1 @ monomial_matrix(w, field, precision) @ p2)
        ws.append(w)
    return module_from_isotypic(tau, field, orientation, A, e_K, height, precision), ws


def random_loop_elements(M: KisinModuleDD, rng: random.Random, precision: int | None = None):
    prec = M.precision if precision is None else precision
    return [random_parahoric(M.field, M.blocks(j), prec, rng) for j in range(M.f)]


def corrupt_module(M: KisinModuleDD, rng: random.Random):
    """Add one monomial off the allowed residue class; returns (module, (j, i, k, m))."""
    if M.order == 1:
        raise ValueError("trivial descent group: every exponent is allowed")
    j = rng.randrange(M.f)
    i, k = rng.randrange(M.n), rng.randrange(M.n)
    C = M.frobenius[j]
    r = _required_residue(M, j, i, k)
    while True:
        m = rng.randrange(0, min(C.prec, 4 * M.order))
        if (m - r) % M.order:
            break
    c = rng.randrange(1, M.field.q)
    rows = [list(row) for row in C.rows]
    rows[i][k] = rows[i][k] + TruncSeries.monomial(M.field, m, C.prec, c, var="v")
    frob = list(M.frobenius)
    frob[j] = SeriesMatrix(rows)
    return M.replace(frob), (j, i + 1, k + 1, m)


def identity_module(tau: TameType, orientation, field: FieldSpec | None = None, precision: int = 8,
                    e_K: int = 1, height: int = 1) -> KisinModuleDD:
    if field is None:
        field = default_field(tau.p, tau.f)
    I = SeriesMatrix.identity(field, tau.n, precision * tau.order, "v")
    return KisinModuleDD(tau, field, [I] * tau.f, orientation, e_K, height, precision)
