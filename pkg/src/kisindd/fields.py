"""Exact coefficient fields: finite fields F_p[x]/(f) and the rationals.

Finite-field elements are stored internally as integer codes: the element
c_0 + c_1 x + ... + c_{m-1} x^{m-1} has code c_0 + c_1 p + ... + c_{m-1} p^{m-1}.
Series and matrices work on codes directly; :class:`FieldElement` is the
user-facing wrapper with operator overloading.

Both field classes expose the same small protocol (``zero``, ``one``, ``add``,
``sub``, ``neg``, ``mul``, ``inv``) so the series code can run over either.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _poly_mod(num: list[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of num modulo den over F_p (den need not be monic)."""
    num = [c % p for c in num]
    lead_inv = pow(den[-1], p - 2, p)
    dd = len(den) - 1
    while len(num) - 1 >= dd and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) - 1 < dd:
            break
        c = num[-1] * lead_inv % p
        shift = len(num) - 1 - dd
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - c * d) % p
        num.pop()
    while num and num[-1] == 0:
        num.pop()
    return num


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Brute-force irreducibility test over F_p: try every monic factor of degree <= deg/2."""
    m = len(poly) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            cand = list(tail) + [1]
            if not _poly_mod(list(poly), cand, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The finite field F_p[x]/(poly) with q = p**m elements.

    ``poly`` is the ascending coefficient vector of a monic irreducible
    polynomial of degree m. For m == 1 any monic linear polynomial works and
    the field is just F_p.
    """

    p: int
    m: int
    poly: tuple[int, ...]
    _exp: list = field(init=False, repr=False, compare=False)
    _log: list = field(init=False, repr=False, compare=False)
    _add: list = field(init=False, repr=False, compare=False)

    zero = 0
    one = 1

    def __post_init__(self):
        poly = tuple(int(c) % self.p if i < self.m else int(c) for i, c in enumerate(self.poly))
        object.__setattr__(self, "poly", poly)
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.m < 1 or len(poly) != self.m + 1:
            raise ValueError(f"defining polynomial must have length m+1 = {self.m + 1}")
        if poly[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        if self.m > 1 and not is_irreducible(poly, self.p):
            raise ValueError(f"polynomial {list(poly)} is reducible over F_{self.p}")
        object.__setattr__(self, "_exp", None)
        object.__setattr__(self, "_log", None)
        object.__setattr__(self, "_add", None)
        if self.m > 1:
            self._build_tables()

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p, 1, (0, 1))

    @property
    def q(self) -> int:
        return self.p ** self.m

    # -- encoding -------------------------------------------------------

    def encode(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m:
            raise ValueError(f"coefficient vector longer than m={self.m}")
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + int(c) % self.p
        return code

    def decode(self, code: int) -> list[int]:
        out = []
        for _ in range(self.m):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    def from_int(self, k: int) -> int:
        return int(k) % self.p

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        return FieldElement(self, self.encode(value))

    def elements(self):
        return range(self.q)

    # -- tables (extension fields only) ---------------------------------

    def _slow_mul(self, a: int, b: int) -> int:
        x, y = self.decode(a), self.decode(b)
        prod = [0] * (2 * self.m - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] += xi * yj
        return self.encode((_poly_mod(prod, self.poly, self.p) + [0] * self.m)[: self.m])

    def _build_tables(self):
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._slow_mul(x, g)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover - every finite field has a generator
            raise RuntimeError("no primitive element found")
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)
        if q <= 1024:
            add = [[self._digit_add(a, b) for b in range(q)] for a in range(q)]
            object.__setattr__(self, "_add", add)

    def _digit_add(self, a: int, b: int, sign: int = 1) -> int:
        p = self.p
        code, scale = 0, 1
        for _ in range(self.m):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            code += ((ra + sign * rb) % p) * scale
            scale *= p
        return code

    # -- arithmetic on codes --------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        return self._digit_add(a, b)

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        return self._digit_add(0, a, -1)

    def sub(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a - b) % self.p
        if self._add is not None:
            return self._add[a][self.neg(b)]
        return self._digit_add(a, b, -1)

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[-self._log[a] % (self.q - 1)]

    def power(self, a: int, k: int) -> int:
        if self.m == 1:
            if not a:
                if k < 0:
                    raise ZeroDivisionError("negative power of zero")
                return 1 if k == 0 else 0
            return pow(a, k % (self.p - 1), self.p)
        if not a:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        return self._exp[self._log[a] * k % (self.q - 1)]

    def multiplicative_order(self, a: int) -> int:
        if not a:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for d in _divisors(n):
            if self.power(a, d) == 1:
                order = d
                break
        return order

    def primitive_root_of_unity(self, order: int) -> int:
        """Smallest-code element of exact multiplicative order ``order``."""
        if (self.q - 1) % order:
            raise ValueError(f"F_{self.q} has no primitive {order}-th root of unity")
        for a in range(1, self.q):
            if self.multiplicative_order(a) == order:
                return a
        raise AssertionError("unreachable")  # pragma: no cover

    def format(self, code: int) -> str:
        if self.m == 1:
            return str(code)
        terms = []
        for i, c in enumerate(self.decode(code)):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "+".join(terms) or "0"

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "poly": list(self.poly)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        return cls(int(data["p"]), int(data["m"]), tuple(int(c) for c in data["poly"]))


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


class RationalField:
    """The rationals, with the same code-level protocol as :class:`FieldSpec`."""

    zero = Fraction(0)
    one = Fraction(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "RationalField()"

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    @staticmethod
    def power(a, k):
        return Fraction(a) ** k

    @staticmethod
    def format(a) -> str:
        return str(a)


QQ = RationalField()


class FieldElement:
    """An element of a finite field, wrapping an integer code."""

    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        if not 0 <= code < spec.q:
            raise ValueError(f"code {code} out of range for F_{spec.q}")
        self.spec = spec
        self.code = code

    @property
    def coeffs(self) -> list[int]:
        return self.spec.decode(self.code)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ValueError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.sub(self.code, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.sub(o, self.code))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.mul(self.code, o))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.code))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.mul(self.code, self.spec.inv(o)))

    def __pow__(self, k: int):
        return FieldElement(self.spec, self.spec.power(self.code, k))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.code == other.code
        if isinstance(other, int):
            return self.code == self.spec.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.p, self.spec.m, self.code))

    def __repr__(self):
        return f"FieldElement({self.spec.format(self.code)} in F_{self.spec.q})"
