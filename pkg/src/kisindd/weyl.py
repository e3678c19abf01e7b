"""The extended affine Weyl group of GL_n as periodic permutations of Z.

An element is stored by its window (sigma(1), ..., sigma(n)); sigma(i + n) =
sigma(i) + n. The translation t_lam sends i to i + n*lam_i, and t_lam * w is the
bijection i -> w(i) + n*lam_{w(i)}. Simple reflections s_1..s_{n-1} swap i and
i+1, s_0 swaps 0 and 1 (mod n).
"""
from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch


class AffinePermutation:
    __slots__ = ("window", "n")

    def __init__(self, window: Sequence[int]):
        window = tuple(int(x) for x in window)
        n = len(window)
        if n == 0:
            raise ValueError("empty window")
        if len({x % n for x in window}) != n:
            raise ValueError(f"window {window} does not define a bijection of Z")
        self.window = window
        self.n = n

    @classmethod
    def identity(cls, n: int) -> "AffinePermutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_parts(cls, lam: Sequence[int], w: Sequence[int] | None = None) -> "AffinePermutation":
        """t_lam * w, with w given 1-based in one-line notation."""
        n = len(lam)
        if w is None:
            w = range(1, n + 1)
        w = tuple(w)
        if sorted(w) != list(range(1, n + 1)) or len(w) != n:
            raise ValueError(f"{w} is not a permutation of 1..{n}")
        return cls(w[i] + n * lam[w[i] - 1] for i in range(n))

    @classmethod
    def translation(cls, lam: Sequence[int]) -> "AffinePermutation":
        return cls.from_parts(lam)

    @classmethod
    def simple(cls, n: int, i: int) -> "AffinePermutation":
        return cls.identity(n).right_simple(i)

    @classmethod
    def rotation(cls, n: int, k: int = 1) -> "AffinePermutation":
        """tau^k with tau(i) = i + 1; generates the length-zero subgroup."""
        return cls(range(1 + k, n + 1 + k))

    # -- structure --------------------------------------------------------

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    def parts(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(lam, w) with self = t_lam * w; w is 1-based one-line notation."""
        n = self.n
        w = [0] * n
        lam = [0] * n
        for i, s in enumerate(self.window):
            wi = (s - 1) % n + 1
            w[i] = wi
            lam[wi - 1] = (s - wi) // n
        return tuple(lam), tuple(w)

    @property
    def shift(self) -> int:
        return sum(self.window) - self.n * (self.n + 1) // 2

    def is_translation(self) -> bool:
        return all(s % self.n == (i + 1) % self.n for i, s in enumerate(self.window))

    def inverse(self) -> "AffinePermutation":
        n = self.n
        out = [0] * n
        for i, s in enumerate(self.window, start=1):
            q, r = divmod(s - 1, n)
            out[r] = i - q * n
        return AffinePermutation(out)

    def __mul__(self, other: "AffinePermutation") -> "AffinePermutation":
        return multiply(self, other)

    # -- length -----------------------------------------------------------

    def length(self) -> int:
        return length(self)

    def right_simple(self, i: int) -> "AffinePermutation":
        """self * s_i."""
        n = self.n
        win = list(self.window)
        if i == 0:
            win[0], win[-1] = self.window[-1] - n, self.window[0] + n
        else:
            win[i - 1], win[i] = win[i], win[i - 1]
        return AffinePermutation(win)

    def left_simple(self, i: int) -> "AffinePermutation":
        """s_i * self: swap the values with residues i and i+1."""
        n = self.n
        lo, hi = i % n, (i + 1) % n
        out = []
        for s in self.window:
            r = s % n
            out.append(s + 1 if r == lo else s - 1 if r == hi else s)
        return AffinePermutation(out)

    def right_descents(self) -> list[int]:
        n = self.n
        out = [0] if self.window[-1] - n > self.window[0] else []
        out += [i for i in range(1, n) if self.window[i - 1] > self.window[i]]
        return out

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, AffinePermutation):
            return NotImplemented
        return self.window == other.window

    def __lt__(self, other: "AffinePermutation"):
        return self.window < other.window

    def __hash__(self):
        return hash(self.window)

    def __repr__(self):
        return f"AffinePermutation({list(self.window)})"


def _check_n(a: AffinePermutation, b: AffinePermutation):
    if a.n != b.n:
        raise DimensionMismatch(f"affine permutations of sizes {a.n} and {b.n}")


def multiply(a: AffinePermutation, b: AffinePermutation) -> AffinePermutation:
    """Composition a o b (b applied first)."""
    _check_n(a, b)
    return AffinePermutation(a(x) for x in b.window)


def length(w: AffinePermutation) -> int:
    """Periodic inversion count #{(i, j): 1 <= i <= n, i < j, w(i) > w(j)}."""
    return _length(w.window)


@lru_cache(maxsize=1 << 16)
def _length(win: tuple) -> int:
    n = len(win)
    total = 0
    for i in range(1, n + 1):
        si = win[i - 1]
        for j in range(1, n + 1):
            sj = win[j - 1]
            # k with j + nk > i and sj + nk < si
            kmin = (i - j) // n + 1
            kmax = -((sj - si) // n) - 1
            if kmax >= kmin:
                total += kmax - kmin + 1
    return total


def length_iwahori_matsumoto(w: AffinePermutation) -> int:
    """The same length, from the (lam, w) decomposition."""
    lam, perm = w.parts()
    n = w.n
    winv = [0] * n
    for i, x in enumerate(perm, start=1):
        winv[x - 1] = i
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            d = lam[i] - lam[j]
            total += abs(d) if winv[i] < winv[j] else abs(d - 1)
    return total


# -- Bruhat order -------------------------------------------------------------

def bruhat_leq(a: AffinePermutation, b: AffinePermutation) -> bool:
    _check_n(a, b)
    return _bruhat(a.window, b.window)


@lru_cache(maxsize=1 << 18)
def _bruhat(a: tuple, b: tuple) -> bool:
    if a == b:
        return True
    la, lb = _length(a), _length(b)
    if la >= lb or sum(a) != sum(b):
        return False
    B = AffinePermutation(b)
    s = B.right_descents()[0]
    A = AffinePermutation(a)
    As = A.right_simple(s)
    lower = As.window if _length(As.window) < la else a
    return _bruhat(lower, B.right_simple(s).window)


def reflections(n: int, bound: int) -> list[tuple[int, int, int]]:
    """Affine reflections as (i, j, k): the transposition of i and j + n*k, 1 <= i < j <= n."""
    return [(i, j, k) for i in range(1, n + 1) for j in range(i + 1, n + 1)
            for k in range(-bound, bound + 1)]


def apply_reflection(w: AffinePermutation, refl) -> AffinePermutation:
    """w * r for the affine reflection r = (i, j, k)."""
    i, j, k = refl
    n = w.n
    win = list(w.window)
    win[i - 1], win[j - 1] = w.window[j - 1] + n * k, w.window[i - 1] - n * k
    return AffinePermutation(win)


def reflection_bound(lam: Sequence[int]) -> int:
    return max((abs(x) for x in lam), default=0) + len(lam)


def covers_below(w: AffinePermutation, bound: int) -> set[AffinePermutation]:
    target = length(w) - 1
    out = set()
    if target < 0:
        return out
    for r in reflections(w.n, bound):
        x = apply_reflection(w, r)
        if length(x) == target:
            out.add(x)
    return out


def downward_closure(tops: Iterable[AffinePermutation], bound: int) -> set[AffinePermutation]:
    """Everything reachable from ``tops`` through covers (breadth first)."""
    seen = set(tops)
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for x in covers_below(w, bound):
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return seen


# -- admissible sets ----------------------------------------------------------

def orbit(lam: Sequence[int]) -> list[tuple[int, ...]]:
    return sorted(set(itertools.permutations(tuple(lam))))


def is_dominant(lam: Sequence[int]) -> bool:
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def dominance_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """a <= b in dominance order (both sorted decreasingly first)."""
    if len(a) != len(b):
        raise DimensionMismatch("cocharacters of different lengths")
    a = sorted(a, reverse=True)
    b = sorted(b, reverse=True)
    if sum(a) != sum(b):
        return False
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa > sb:
            return False
    return True


def finite_weyl_group(n: int) -> list[AffinePermutation]:
    return [AffinePermutation(p) for p in itertools.permutations(range(1, n + 1))]


def admissible_set(lam: Sequence[int]) -> set[AffinePermutation]:
    """Bruhat-downward closure of the translations t_mu, mu in the S_n-orbit of lam."""
    lam = tuple(lam)
    n = len(lam)
    tops = [AffinePermutation.translation(mu) for mu in orbit(lam)]
    top_len = length(tops[0])
    lo, hi = min(lam) - 1, max(lam) + 1
    total = sum(lam)
    out = set()
    perms = list(itertools.permutations(range(1, n + 1)))
    for nu in itertools.product(range(lo, hi + 1), repeat=n):
        if sum(nu) != total:
            continue
        for w in perms:
            x = AffinePermutation.from_parts(nu, w)
            if length(x) > top_len:
                continue
            if any(bruhat_leq(x, t) for t in tops):
                out.add(x)
    return out


def admissible_set_bfs(lam: Sequence[int], bound: int | None = None) -> set[AffinePermutation]:
    """Independent construction by cover BFS from the translations."""
    if bound is None:
        bound = reflection_bound(lam)
    return downward_closure((AffinePermutation.translation(mu) for mu in orbit(lam)), bound)


# -- parabolic subgroups and double cosets -------------------------------------

class BlockPartition:
    """Ordered partition of 1..n into consecutive blocks, stored by sizes."""

    __slots__ = ("sizes",)

    def __init__(self, sizes: Sequence[int]):
        sizes = tuple(int(s) for s in sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError(f"invalid block sizes {sizes}")
        self.sizes = sizes

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]]) -> "BlockPartition":
        flat = [x for b in blocks for x in b]
        if flat != list(range(1, len(flat) + 1)) or any(not b for b in blocks):
            raise ValueError(f"blocks {blocks} are not consecutive and covering")
        return cls([len(b) for b in blocks])

    @classmethod
    def parse(cls, text: str) -> "BlockPartition":
        """'1,2|3' -> blocks {1,2}{3}."""
        return cls.from_blocks([[int(x) for x in part.split(",")] for part in text.split("|")])

    @classmethod
    def borel(cls, n: int) -> "BlockPartition":
        return cls([1] * n)

    @classmethod
    def full(cls, n: int) -> "BlockPartition":
        return cls([n])

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def blocks(self) -> list[list[int]]:
        out, start = [], 1
        for s in self.sizes:
            out.append(list(range(start, start + s)))
            start += s
        return out

    def simple_indices(self) -> list[int]:
        """i with s_i in W_P, i.e. i and i+1 in the same block."""
        return [b[k] for b in self.blocks for k in range(len(b) - 1)]

    def weyl_group(self) -> list[AffinePermutation]:
        out = []
        for parts in itertools.product(*(itertools.permutations(b) for b in self.blocks)):
            out.append(AffinePermutation([x for p in parts for x in p]))
        return out

    def is_borel(self) -> bool:
        return all(s == 1 for s in self.sizes)

    def format(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)

    def __eq__(self, other):
        return isinstance(other, BlockPartition) and self.sizes == other.sizes

    def __hash__(self):
        return hash(self.sizes)

    def __repr__(self):
        return f"BlockPartition({self.format()!r})"


def _check_blocks(w: AffinePermutation, blocks: BlockPartition):
    if blocks.n != w.n:
        raise DimensionMismatch(f"blocks of {blocks.n} for an element of size {w.n}")


def min_double_coset_rep(w: AffinePermutation, blocks: BlockPartition) -> AffinePermutation:
    _check_blocks(w, blocks)
    return _coset_rep(w, blocks, -1)


def max_double_coset_rep(w: AffinePermutation, blocks: BlockPartition) -> AffinePermutation:
    _check_blocks(w, blocks)
    return _coset_rep(w, blocks, +1)


def _coset_rep(w, blocks, direction):
    simples = blocks.simple_indices()
    cur, cur_len = w, length(w)
    changed = True
    while changed:
        changed = False
        for i in simples:
            for x in (cur.left_simple(i), cur.right_simple(i)):
                lx = length(x)
                if (lx - cur_len) * direction > 0:
                    cur, cur_len, changed = x, lx, True
    return cur


def double_coset(w: AffinePermutation, blocks: BlockPartition) -> set[AffinePermutation]:
    wp = blocks.weyl_group()
    return {multiply(multiply(x, w), y) for x in wp for y in wp}


def parahoric_admissible_set(lam: Sequence[int], blocks: BlockPartition) -> set[AffinePermutation]:
    """Minimal representatives of the double cosets W_P Adm(lam) W_P."""
    if blocks.n != len(lam):
        raise DimensionMismatch("block partition and cocharacter differ in size")
    return {min_double_coset_rep(w, blocks) for w in admissible_set(lam)}


def random_element(n: int, bound: int, rng: random.Random) -> AffinePermutation:
    lam = [rng.randint(-bound, bound) for _ in range(n)]
    w = list(range(1, n + 1))
    rng.shuffle(w)
    return AffinePermutation.from_parts(lam, w)
