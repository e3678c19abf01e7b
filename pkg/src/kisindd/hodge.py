"""Relative position at u = p of rational polynomial Frobenius matrices (e_K = 1).

Each matrix is expanded around u = p by substituting u = p + t, then reduced
by Smith normal form over QQ[[t]]. The exponents of t are the elementary
divisors at the prime (u - p); the verdict compares them with the bound mu in
dominance order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .decompose import smith_normal_form
from .errors import (DimensionMismatch, PrecisionExhausted, RamifiedNotSupported, ShapeMismatch,
                     SingularAtPi)
from .fields import QQ
from .matrix import SeriesMatrix
from .series import TruncSeries
from .weyl import dominance_leq


@dataclass
class HodgeInput:
    p: int
    f: int
    n: int
    mu: list          # mu[j][psi] is a cocharacter of length n
    matrices: list    # matrices[j][r][c] is an ascending list of rational coefficients in u
    e_K: int = 1

    def __post_init__(self):
        if self.e_K != 1:
            raise RamifiedNotSupported("the Hodge check is only implemented for e_K = 1")
        mu = []
        for m in self.mu:
            # a bare cocharacter stands for the single embedding psi
            if m and all(isinstance(x, int) for x in m):
                m = [m]
            mu.append([tuple(int(x) for x in v) for v in m])
        self.mu = mu
        if len(self.mu) != self.f or len(self.matrices) != self.f:
            raise ShapeMismatch(f"need f = {self.f} cocharacters and matrices")
        for m in self.mu:
            if len(m) != self.e_K:
                raise RamifiedNotSupported("more than one embedding psi per j means e_K > 1")
            if any(len(v) != self.n for v in m):
                raise ShapeMismatch(f"cocharacters must have length n = {self.n}")
        mats = []
        for M in self.matrices:
            if len(M) != self.n or any(len(r) != self.n for r in M):
                raise DimensionMismatch(f"Frobenius matrices must be {self.n}x{self.n}")
            mats.append([[[Fraction(c) for c in e] for e in r] for r in M])
        self.matrices = mats


def shift_polynomial(coeffs: Sequence[Fraction], p) -> list[Fraction]:
    """Coefficients in t of P(p + t)."""
    out = [Fraction(0)] * len(coeffs)
    for d, c in enumerate(coeffs):
        if c:
            for k in range(d + 1):
                out[k] += c * comb(d, k) * Fraction(p) ** (d - k)
    return out


def expand_at(matrix, p, prec: int) -> SeriesMatrix:
    return SeriesMatrix([[TruncSeries.from_coeffs(QQ, shift_polynomial(e, p) or [0], prec, "t")
                          for e in row] for row in matrix])


def position_at(matrix, p) -> tuple[tuple[int, ...], int]:
    """(dominant elementary-divisor vector at u = p, (u - p)-valuation of det)."""
    deg = max((len(e) for row in matrix for e in row), default=1)
    exact = len(matrix) * deg + 1
    det = expand_at(matrix, p, exact).det()
    d = det.valuation()
    if d is None:
        raise SingularAtPi("determinant is identically zero")
    prec = d + 1
    while True:
        try:
            divs, _, _ = smith_normal_form(expand_at(matrix, p, prec))
            break
        except PrecisionExhausted:
            prec *= 2
    return tuple(sorted(divs, reverse=True)), d


@dataclass
class HodgeReport:
    positions: list       # positions[j][psi]
    det_valuations: list
    verdicts: list        # verdicts[j][psi]

    @property
    def ok(self) -> bool:
        return all(all(v) for v in self.verdicts)

    def to_json(self) -> dict:
        return {"positions": [[list(x) for x in pj] for pj in self.positions],
                "det_valuations": self.det_valuations, "verdicts": self.verdicts, "leq_mu": self.ok}


def hodge_position(H: HodgeInput) -> HodgeReport:
    positions, dets, verdicts = [], [], []
    for j, M in enumerate(H.matrices):
        pos, d = position_at(M, H.p)
        positions.append([pos])
        dets.append(d)
        verdicts.append([dominance_leq(pos, H.mu[j][0])])
    return HodgeReport(positions, dets, verdicts)


# -- polynomial matrices (used to build inputs) ---------------------------------

def poly_mul(a, b) -> list[Fraction]:
    if not a or not b:
        return [Fraction(0)]
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_add(a, b) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def poly_matmul(A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for k in range(n):
            acc = [Fraction(0)]
            for t in range(n):
                acc = poly_add(acc, poly_mul(A[i][t], B[t][k]))
            row.append(acc)
        out.append(row)
    return out


def poly_eval(a, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def linear_power(p, k: int) -> list[Fraction]:
    """(u - p)^k."""
    out = [Fraction(1)]
    for _ in range(k):
        out = poly_mul(out, [Fraction(-p), Fraction(1)])
    return out
