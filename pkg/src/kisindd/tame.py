"""Tame principal-series types, digit rotations and orientations.

A type is recorded by exponents a_i in [0, p^f - 2]; chi_i is the a_i-th power
of the niveau-f fundamental character. Permutations are 1-based tuples in
one-line notation: s = (s(1), ..., s(n)).
"""
from __future__ import annotations

import itertools
from collections import Counter
from typing import Sequence

from .errors import InvalidOrientation
from .fields import is_prime
from .weyl import BlockPartition


class TameType:
    __slots__ = ("p", "f", "exponents")

    def __init__(self, p: int, f: int, exponents: Sequence[int]):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if f < 1:
            raise ValueError("f must be positive")
        exps = tuple(int(a) for a in exponents)
        if not exps:
            raise ValueError("a type needs at least one character")
        self.p, self.f = p, f
        self.exponents = tuple(a % (p ** f - 1) for a in exps) if p ** f > 2 else tuple(0 for _ in exps)

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def order(self) -> int:
        """|Delta| = p^f - 1."""
        return self.p ** self.f - 1

    def digits(self, i: int) -> list[int]:
        """Base-p digits (a_{i,0}, ..., a_{i,f-1}) of a_i (0-based i)."""
        a, out = self.exponents[i], []
        for _ in range(self.f):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def twisted_exponents(self, j: int) -> tuple[int, ...]:
        """a_i^(j) = sum_k a_{i, f-j+k} p^k with digit indices mod f."""
        f, p = self.f, self.p
        j %= f
        out = []
        for i in range(self.n):
            d = self.digits(i)
            val = sum(d[(f - j + k) % f] * p ** k for k in range(f))
            assert self.order == 1 or (val - pow(p, j) * self.exponents[i]) % self.order == 0
            out.append(val)
        return tuple(out)

    def distinct(self) -> bool:
        return len(set(self.exponents)) == self.n

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def __eq__(self, other):
        return (isinstance(other, TameType) and (self.p, self.f, self.exponents)
                == (other.p, other.f, other.exponents))

    def __hash__(self):
        return hash((self.p, self.f, self.exponents))

    def __repr__(self):
        return f"TameType(p={self.p}, f={self.f}, exponents={list(self.exponents)})"


def twisted_exponents(tau: TameType, j: int) -> tuple[int, ...]:
    return tau.twisted_exponents(j)


def sorting_permutations(values: Sequence[int]) -> list[tuple[int, ...]]:
    """All s with values[s(1)] <= ... <= values[s(n)], 1-based, in lexicographic order."""
    groups = {}
    for i, v in enumerate(values, start=1):
        groups.setdefault(v, []).append(i)
    ordered = [groups[v] for v in sorted(groups)]
    out = []
    for parts in itertools.product(*(itertools.permutations(g) for g in ordered)):
        out.append(tuple(x for part in parts for x in part))
    return sorted(out)


def is_sorting(values: Sequence[int], s: Sequence[int]) -> bool:
    n = len(values)
    if sorted(s) != list(range(1, n + 1)):
        return False
    return all(values[s[i] - 1] <= values[s[i + 1] - 1] for i in range(n - 1))


class Orientation(tuple):
    """Tuple (s_0, ..., s_{f-1}) of 1-based permutations."""

    def __new__(cls, perms):
        return super().__new__(cls, (tuple(int(x) for x in s) for s in perms))

    def format(self) -> list[str]:
        return [format_permutation(s) for s in self]


def format_permutation(s: Sequence[int]) -> str:
    """'Id' for the identity, 's' for the transposition of S_2, else one-line notation."""
    s = tuple(s)
    if s == tuple(range(1, len(s) + 1)):
        return "Id"
    if s == (2, 1):
        return "s"
    return "(" + ",".join(map(str, s)) + ")"


def orientations(tau: TameType) -> list[Orientation]:
    per_j = [sorting_permutations(tau.twisted_exponents(j)) for j in range(tau.f)]
    return [Orientation(c) for c in itertools.product(*per_j)]


def check_orientation(tau: TameType, o: Sequence[Sequence[int]]) -> Orientation:
    o = Orientation(o)
    if len(o) != tau.f:
        raise InvalidOrientation(f"orientation has {len(o)} permutations, expected f = {tau.f}")
    for j, s in enumerate(o):
        if len(s) != tau.n or not is_sorting(tau.twisted_exponents(j), s):
            raise InvalidOrientation(f"s_{j} = {list(s)} does not sort {list(tau.twisted_exponents(j))}")
    return o


def sorted_twisted(tau: TameType, o: Sequence[Sequence[int]], j: int) -> tuple[int, ...]:
    a = tau.twisted_exponents(j)
    return tuple(a[x - 1] for x in o[j % tau.f])


def parabolic_blocks(tau: TameType, o: Sequence[Sequence[int]], j: int) -> BlockPartition:
    """Blocks of equal values in the sorted twisted exponent vector."""
    o = check_orientation(tau, o)
    vals = sorted_twisted(tau, o, j)
    sizes = [len(list(g)) for _, g in itertools.groupby(vals)]
    return BlockPartition(sizes)


def type_multiset(exponents: Sequence[int], order: int) -> tuple[int, ...]:
    return tuple(sorted(Counter(a % order if order > 1 else 0 for a in exponents).elements()))
