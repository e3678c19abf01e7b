"""Kottwitz-Rapoport strata: the poset prod_j Adm_{P_j}(lambda_j).

Strata are labelled by tuples of minimal double-coset representatives. The
dimension of a stratum is the sum over j of the length of the maximal element
of its double coset.
"""
from __future__ import annotations

import itertools
import json
from math import factorial, prod
from typing import Sequence

from .errors import DimensionMismatch, UnknownFormat
from .kisin import lambda_from_mu
from .tame import TameType, check_orientation, parabolic_blocks
from .weyl import (AffinePermutation, BlockPartition, bruhat_leq, covers_below, downward_closure,
                   max_double_coset_rep, min_double_coset_rep, orbit, parahoric_admissible_set,
                   reflection_bound)


def _label(node) -> str:
    return "|".join(",".join(map(str, w.window)) for w in node)


class StrataPoset:
    def __init__(self, lambdas: Sequence[Sequence[int]], blocks: Sequence[BlockPartition]):
        if len(lambdas) != len(blocks):
            raise DimensionMismatch("one block partition per cocharacter")
        self.lambdas = [tuple(l) for l in lambdas]
        self.blocks = list(blocks)
        self.factors = [sorted(parahoric_admissible_set(l, b)) for l, b in zip(self.lambdas, self.blocks)]
        self.nodes = sorted(itertools.product(*self.factors), key=lambda t: [w.window for w in t])
        self._node_set = set(self.nodes)
        self.dims = {node: tuple(max_double_coset_rep(w, b).length() for w, b in zip(node, self.blocks))
                     for node in self.nodes}

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, node):
        return tuple(node) in self._node_set

    def dim(self, node) -> int:
        return sum(self.dims[tuple(node)])

    def leq(self, a, b) -> bool:
        return all(bruhat_leq(x, y) for x, y in zip(a, b))

    def below(self, node) -> list:
        """Order ideal generated by node: the strata in the closure of its stratum."""
        return [x for x in self.nodes if self.leq(x, node)]

    def maximal(self) -> list:
        return [a for a in self.nodes if not any(b != a and self.leq(a, b) for b in self.nodes)]

    def hasse_edges(self) -> list[tuple]:
        """(upper, lower) pairs with nothing strictly in between."""
        edges = []
        for a in self.nodes:
            lower = [b for b in self.nodes if b != a and self.leq(b, a)]
            for b in lower:
                if not any(c != b and self.leq(b, c) for c in lower):
                    edges.append((a, b))
        return edges

    def label(self, node) -> str:
        return _label(node)


def strata_poset(mu, tau: TameType, orientation) -> StrataPoset:
    o = check_orientation(tau, orientation)
    lams = lambda_from_mu(mu)
    if len(lams) != tau.f or len(lams[0]) != tau.n:
        raise DimensionMismatch(f"mu must give {tau.f} cocharacters of length {tau.n}")
    blocks = [parabolic_blocks(tau, o, j) for j in range(tau.f)]
    return StrataPoset(lams, blocks)


def irreducible_components(P: StrataPoset) -> list:
    return P.maximal()


def orbit_count(lam: Sequence[int], blocks: BlockPartition) -> int:
    """|W_P \\ S_n lam| by counting orbits directly."""
    seen, count = set(), 0
    wp = [w.window for w in blocks.weyl_group()]
    for mu in orbit(lam):
        if mu in seen:
            continue
        count += 1
        for w in wp:
            seen.add(tuple(mu[w[i] - 1] for i in range(len(mu))))
    return count


def expected_components(P: StrataPoset) -> int:
    return prod(orbit_count(l, b) for l, b in zip(P.lambdas, P.blocks))


def closure_by_covers(P: StrataPoset, node) -> set:
    """Closure of a stratum computed without the poset order: cover BFS from the
    maximal element of each double coset, mapped back to minimal representatives."""
    parts = []
    for w, lam, b in zip(node, P.lambdas, P.blocks):
        top = max_double_coset_rep(w, b)
        down = downward_closure([top], reflection_bound(lam))
        parts.append({min_double_coset_rep(x, b) for x in down})
    return set(itertools.product(*parts))


# -- export ------------------------------------------------------------------

def export_poset(P: StrataPoset, format: str = "json") -> str:
    maximal = set(P.maximal())
    if format == "json":
        data = {"lambdas": [list(l) for l in P.lambdas],
                "blocks": [b.format() for b in P.blocks],
                "nodes": [{"label": P.label(x), "windows": [list(w.window) for w in x],
                           "dims": list(P.dims[x]), "dim": P.dim(x), "maximal": x in maximal}
                          for x in P.nodes],
                "edges": [{"source": P.label(a), "target": P.label(b)} for a, b in P.hasse_edges()]}
        return json.dumps(data, indent=2)
    if format == "dot":
        lines = ["digraph strata {", "  rankdir=BT;"]
        for x in P.nodes:
            shape = "doublecircle" if x in maximal else "ellipse"
            lines.append(f'  "{P.label(x)}" [label="{P.label(x)}\\ndim {P.dim(x)}", shape={shape}];')
        for a, b in P.hasse_edges():
            lines.append(f'  "{P.label(b)}" -> "{P.label(a)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise UnknownFormat(f"unknown export format {format!r}; use 'json' or 'dot'")


def load_poset_json(text: str):
    """Parse an exported poset back to (nodes, order) with order the reflexive-transitive
    closure of the Hasse edges, as sets of label tuples."""
    data = json.loads(text)
    nodes = {n["label"]: tuple(AffinePermutation(w) for w in n["windows"]) for n in data["nodes"]}
    up = {label: set() for label in nodes}
    for e in data["edges"]:
        up[e["target"]].add(e["source"])
    order = set()
    for label in nodes:
        stack, seen = [label], {label}
        while stack:
            x = stack.pop()
            for y in up[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        order |= {(label, y) for y in seen}
    return nodes, order
