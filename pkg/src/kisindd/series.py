"""Truncated power and Laurent series with absolute-precision tracking.

A :class:`TruncSeries` stands for the class of ``sum(c_e * t**e)`` modulo
``t**prec``. Coefficients are stored sparsely (exponent -> field code), which
keeps series in ``v`` cheap: descent data force each entry onto a single
residue class of exponents.

Precision is never increased silently. Sums keep the smaller precision;
products use the valuation-aware bound ``min(Na + vb, Nb + va)``, where an
unknown valuation counts as the precision itself.
"""
from __future__ import annotations

from typing import Iterable, Mapping

from .errors import NotAUnit, PrecisionExhausted
from .fields import FieldElement

VARIABLES = ("u", "v", "t")


class TruncSeries:
    __slots__ = ("field", "terms", "prec", "var")

    def __init__(self, field, terms: Mapping[int, object], prec: int, var: str = "u"):
        if var not in VARIABLES:
            raise ValueError(f"unknown series variable {var!r}")
        self.field = field
        self.prec = int(prec)
        self.var = var
        self.terms = {e: c for e, c in terms.items() if c and e < self.prec}

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field, prec: int, var: str = "u") -> "TruncSeries":
        return cls(field, {}, prec, var)

    @classmethod
    def one(cls, field, prec: int, var: str = "u") -> "TruncSeries":
        return cls(field, {0: field.one}, prec, var)

    @classmethod
    def monomial(cls, field, exponent: int, prec: int, coeff=None, var: str = "u") -> "TruncSeries":
        c = field.one if coeff is None else coeff
        return cls(field, {exponent: c}, prec, var)

    @classmethod
    def from_coeffs(cls, field, coeffs: Iterable, prec: int | None = None, var: str = "u",
                    start: int = 0) -> "TruncSeries":
        """Dense constructor: ``coeffs[k]`` is the coefficient of t^(start+k).

        Entries may be field codes, :class:`FieldElement` values or plain ints
        (reduced into the prime field). Without ``prec`` the precision is the
        first exponent past the given coefficients.
        """
        coeffs = list(coeffs)
        if prec is None:
            prec = start + len(coeffs)
        terms = {}
        for k, c in enumerate(coeffs):
            terms[start + k] = _to_code(field, c)
        return cls(field, terms, prec, var)

    # -- inspection -------------------------------------------------------

    def valuation(self) -> int | None:
        """Least exponent with a nonzero coefficient, or None when the series
        vanishes at the stored precision (its valuation is then >= prec)."""
        return min(self.terms) if self.terms else None

    def certified_valuation(self) -> int:
        v = self.valuation()
        if v is None:
            raise PrecisionExhausted(f"series is zero modulo {self.var}^{self.prec}")
        return v

    def _val_bound(self) -> int:
        v = self.valuation()
        return self.prec if v is None else v

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def coeff(self, e: int):
        if e >= self.prec:
            raise PrecisionExhausted(f"coefficient of {self.var}^{e} is beyond precision {self.prec}")
        return self.terms.get(e, self.field.zero)

    def coefficients(self, start: int = 0) -> list:
        return [self.terms.get(e, self.field.zero) for e in range(start, self.prec)]

    def exponents(self) -> list[int]:
        return sorted(self.terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "TruncSeries"):
        if self.field != other.field or self.var != other.var:
            raise ValueError("series over different rings")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        prec = min(self.prec, other.prec)
        add = self.field.add
        terms = {e: c for e, c in self.terms.items() if e < prec}
        for e, c in other.terms.items():
            if e < prec:
                terms[e] = add(terms[e], c) if e in terms else c
        return TruncSeries(self.field, terms, prec, self.var)

    def __neg__(self) -> "TruncSeries":
        neg = self.field.neg
        return TruncSeries(self.field, {e: neg(c) for e, c in self.terms.items()}, self.prec, self.var)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        prec = min(self.prec, other.prec)
        sub, neg = self.field.sub, self.field.neg
        terms = {e: c for e, c in self.terms.items() if e < prec}
        for e, c in other.terms.items():
            if e < prec:
                terms[e] = sub(terms[e], c) if e in terms else neg(c)
        return TruncSeries(self.field, terms, prec, self.var)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(_to_code(self.field, other))
        self._check(other)
        prec = min(self.prec + other._val_bound(), other.prec + self._val_bound())
        mul, add = self.field.mul, self.field.add
        out: dict[int, object] = {}
        b_items = sorted(other.terms.items())
        for ea, ca in sorted(self.terms.items()):
            limit = prec - ea
            for eb, cb in b_items:
                if eb >= limit:
                    break
                e = ea + eb
                c = mul(ca, cb)
                out[e] = add(out[e], c) if e in out else c
        return TruncSeries(self.field, out, prec, self.var)

    __rmul__ = __mul__

    def scale(self, c) -> "TruncSeries":
        mul = self.field.mul
        return TruncSeries(self.field, {e: mul(x, c) for e, x in self.terms.items()}, self.prec, self.var)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by t^k (k may be negative)."""
        return TruncSeries(self.field, {e + k: c for e, c in self.terms.items()}, self.prec + k, self.var)

    def truncate(self, prec: int) -> "TruncSeries":
        if prec >= self.prec:
            return self
        return TruncSeries(self.field, self.terms, prec, self.var)

    def inverse(self) -> "TruncSeries":
        """Inverse of a unit of the power-series ring, to the same precision."""
        v = self.valuation()
        if v != 0:
            raise NotAUnit(f"series with valuation {v if v is not None else '>= %d' % self.prec} is not a unit")
        f = self.field
        a0inv = f.inv(self.terms[0])
        rest = sorted((e, c) for e, c in self.terms.items() if e > 0)
        b = [a0inv]
        for k in range(1, self.prec):
            acc = f.zero
            for e, c in rest:
                if e > k:
                    break
                if b[k - e]:
                    acc = f.add(acc, f.mul(c, b[k - e]))
            b.append(f.neg(f.mul(a0inv, acc)) if acc else f.zero)
        return TruncSeries(f, dict(enumerate(b)), self.prec, self.var)

    def unit_part(self) -> tuple[int, "TruncSeries"]:
        """Split as t^d * unit; returns (d, unit)."""
        d = self.certified_valuation()
        return d, self.shift(-d)

    def __truediv__(self, other: "TruncSeries") -> "TruncSeries":
        """Laurent division by a series of certified valuation."""
        d, unit = other.unit_part()
        return (self * unit.inverse()).shift(-d)

    def substitute_power(self, k: int) -> "TruncSeries":
        """The series in t^k, i.e. t -> t^k (k >= 1)."""
        return TruncSeries(self.field, {e * k: c for e, c in self.terms.items()}, self.prec * k, self.var)

    def scale_variable(self, c) -> "TruncSeries":
        """t -> c*t for a field code c."""
        f = self.field
        return TruncSeries(f, {e: f.mul(x, f.power(c, e)) for e, x in self.terms.items()}, self.prec, self.var)

    def with_var(self, var: str) -> "TruncSeries":
        return TruncSeries(self.field, self.terms, self.prec, var)

    # -- comparison -------------------------------------------------------

    def congruent(self, other: "TruncSeries", prec: int | None = None) -> bool:
        """Equality of coefficients below the common (or given) precision."""
        self._check(other)
        n = min(self.prec, other.prec)
        if prec is not None:
            n = min(n, prec)
        keys = {e for e in self.terms if e < n} | {e for e in other.terms if e < n}
        zero = self.field.zero
        return all(self.terms.get(e, zero) == other.terms.get(e, zero) for e in keys)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.field == other.field and self.var == other.var
                and self.prec == other.prec and self.terms == other.terms)

    def __hash__(self):
        return hash((self.var, self.prec, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        fmt = self.field.format
        parts = []
        for e in sorted(self.terms):
            c = fmt(self.terms[e])
            if e == 0:
                parts.append(c)
            else:
                mono = self.var if e == 1 else f"{self.var}^{e}"
                parts.append(mono if c == "1" else f"({c})*{mono}")
        parts.append(f"O({self.var}^{self.prec})")
        return " + ".join(parts)

    # -- serialization ----------------------------------------------------

    def to_sparse(self) -> list:
        """[[exponent, coefficient vector], ...] in increasing exponent order."""
        dec = getattr(self.field, "decode", None)
        out = []
        for e in sorted(self.terms):
            c = self.terms[e]
            out.append([e, dec(c) if dec else str(c)])
        return out


def _to_code(field, c):
    if isinstance(c, FieldElement):
        return c.code
    if hasattr(field, "from_int"):
        if isinstance(c, int):
            return field.from_int(c)
        if isinstance(c, (list, tuple)):
            return field.encode(c)
        raise TypeError(f"cannot interpret {c!r} as an element of F_{field.q}")
    return c
