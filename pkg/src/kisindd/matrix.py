"""Square matrices over truncated series rings.

Matrices act on column vectors: column k holds the image of the k-th basis
vector. All entries share one field, one variable and one precision; the
constructor truncates every entry to the smallest precision present.
"""
from __future__ import annotations

import itertools
from typing import Callable, Sequence

from .errors import DimensionMismatch, PrecisionExhausted
from .series import TruncSeries


class SeriesMatrix:
    __slots__ = ("rows", "field", "var", "prec", "n")

    def __init__(self, rows: Sequence[Sequence[TruncSeries]]):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("series matrices must be square and nonempty")
        first = rows[0][0]
        prec = min(x.prec for r in rows for x in r)
        for r in rows:
            for x in r:
                if x.field != first.field or x.var != first.var:
                    raise ValueError("matrix entries over different rings")
        self.rows = tuple(tuple(x.truncate(prec) for x in r) for r in rows)
        self.field = first.field
        self.var = first.var
        self.prec = prec
        self.n = n

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, field, n: int, prec: int, var: str = "u") -> "SeriesMatrix":
        return cls.diagonal(field, [0] * n, prec, var)

    @classmethod
    def diagonal(cls, field, exponents: Sequence[int], prec: int, var: str = "u") -> "SeriesMatrix":
        n = len(exponents)
        z = TruncSeries.zero(field, prec, var)
        return cls([[TruncSeries.monomial(field, exponents[i], prec, var=var) if i == j else z
                     for j in range(n)] for i in range(n)])

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], TruncSeries]) -> "SeriesMatrix":
        return cls([[fn(i, j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_polys(cls, field, rows, prec: int, var: str = "u") -> "SeriesMatrix":
        """Rows of dense coefficient lists (ascending), e.g. [[[0,1],[1]],[[0],[0,1]]]."""
        return cls([[TruncSeries.from_coeffs(field, c, prec, var) for c in r] for r in rows])

    # -- access -----------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                yield i, j, x

    def _check(self, other: "SeriesMatrix"):
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n}x{self.n} vs {other.n}x{other.n}")
        if self.field != other.field or self.var != other.var:
            raise ValueError("matrices over different rings")

    # -- arithmetic -------------------------------------------------------

    def __matmul__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._check(other)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = r[0] * c[0]
                for a, b in zip(r[1:], c[1:]):
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return SeriesMatrix(out)

    def __add__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._check(other)
        return SeriesMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._check(other)
        return SeriesMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def map(self, fn: Callable[[TruncSeries], TruncSeries]) -> "SeriesMatrix":
        return SeriesMatrix([[fn(x) for x in r] for r in self.rows])

    def shift(self, k: int) -> "SeriesMatrix":
        return self.map(lambda x: x.shift(k))

    def truncate(self, prec: int) -> "SeriesMatrix":
        return self.map(lambda x: x.truncate(prec))

    def transpose(self) -> "SeriesMatrix":
        return SeriesMatrix(list(zip(*self.rows)))

    def permute(self, perm: Sequence[int]) -> "SeriesMatrix":
        """Entry (i, k) of the result is entry (perm[i], perm[k]) of self (0-based)."""
        return SeriesMatrix([[self.rows[perm[i]][perm[k]] for k in range(self.n)] for i in range(self.n)])

    def det(self) -> TruncSeries:
        """Leibniz expansion; fine for the n <= 6 matrices used here."""
        n = self.n
        if n > 6:
            raise ValueError("determinant implemented for n <= 6")
        total = None
        for perm in itertools.permutations(range(n)):
            term = self.rows[0][perm[0]]
            for i in range(1, n):
                term = term * self.rows[i][perm[i]]
            if _parity(perm):
                term = -term
            total = term if total is None else total + term
        return total

    def min_valuation(self) -> int | None:
        vals = [x.valuation() for _, _, x in self.entries()]
        vals = [v for v in vals if v is not None]
        return min(vals) if vals else None

    def mod_u(self) -> list[list]:
        """Reduction modulo the variable: the matrix of constant terms (field codes)."""
        if self.min_valuation() is not None and self.min_valuation() < 0:
            raise ValueError("matrix has negative exponents; reduction mod u undefined")
        if self.prec < 1:
            raise PrecisionExhausted("no constant terms known")
        return [[x.terms.get(0, self.field.zero) for x in r] for r in self.rows]

    def is_integral(self) -> bool:
        v = self.min_valuation()
        return v is None or v >= 0

    def inverse(self) -> "SeriesMatrix":
        """Inverse over the power-series ring; requires a unit determinant."""
        from .decompose import invert_matrix
        return invert_matrix(self)

    # -- comparison -------------------------------------------------------

    def congruent(self, other: "SeriesMatrix", prec: int | None = None) -> bool:
        self._check(other)
        return all(a.congruent(b, prec) for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __eq__(self, other):
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "\n".join("  [" + ", ".join(repr(x) for x in r) + "]" for r in self.rows)
        return f"SeriesMatrix({self.n}x{self.n} over {self.var}, prec {self.prec}):\n{body}"


def _parity(perm) -> int:
    seen = [False] * len(perm)
    parity = 0
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            parity ^= (length - 1) & 1
    return parity
