"""Random generators used by the property tests and the acceptance suite."""
from __future__ import annotations

import random

from .matrix import SeriesMatrix
from .series import TruncSeries
from .weyl import AffinePermutation, BlockPartition


def random_series(field, prec: int, rng: random.Random, min_val: int = 0, density: float = 0.7,
                  var: str = "u", max_exp: int | None = None) -> TruncSeries:
    top = prec if max_exp is None else min(prec, max_exp + 1)
    terms = {e: rng.randrange(field.q) for e in range(min_val, top) if rng.random() < density}
    return TruncSeries(field, terms, prec, var)


def random_unit(field, prec: int, rng: random.Random, var: str = "u") -> TruncSeries:
    s = random_series(field, prec, rng, var=var)
    s.terms[0] = rng.randrange(1, field.q)
    return s


def random_parahoric(field, blocks: BlockPartition, prec: int, rng: random.Random,
                     var: str = "u") -> SeriesMatrix:
    """A random element of L+P: block upper triangular mod u with invertible diagonal blocks.

    Built as a product of a unipotent upper factor, a block-diagonal unit and a
    lower factor that is trivial mod u, so the determinant is a unit by construction.
    """
    n = blocks.n
    owner = [b for b, blk in enumerate(blocks.blocks) for _ in blk]

    def upper(i, j):
        if i == j:
            return random_unit(field, prec, rng, var)
        if i < j:
            return random_series(field, prec, rng, var=var)
        return TruncSeries.zero(field, prec, var)

    def lower(i, j):
        if i == j:
            return TruncSeries.one(field, prec, var)
        if i > j:
            min_val = 0 if owner[i] == owner[j] else 1
            return random_series(field, prec, rng, min_val=min_val, var=var)
        return TruncSeries.zero(field, prec, var)

    return SeriesMatrix.from_function(n, lower) @ SeriesMatrix.from_function(n, upper)


def random_unimodular(field, n: int, prec: int, rng: random.Random, var: str = "u") -> SeriesMatrix:
    """A random element of GL_n of the series ring, with a random permutation mixed in."""
    g = random_parahoric(field, BlockPartition.full(n), prec, rng, var)
    perm = list(range(n))
    rng.shuffle(perm)
    return g.permute(perm)


def random_matrix(field, n: int, prec: int, rng: random.Random, max_val: int = 3,
                  var: str = "u") -> SeriesMatrix:
    """Entries are random polynomials of degree <= max_val (each possibly zero)."""
    return SeriesMatrix.from_function(
        n, lambda i, j: random_series(field, prec, rng, var=var, density=0.5, max_exp=max_val))


def random_affine(n: int, bound: int, rng: random.Random) -> AffinePermutation:
    lam = [rng.randint(-bound, bound) for _ in range(n)]
    w = list(range(1, n + 1))
    rng.shuffle(w)
    return AffinePermutation.from_parts(lam, w)


def random_poly_matrix_invertible_at(p: int, n: int, rng: random.Random, degree: int = 2,
                                     coeff: int = 3) -> list:
    """Integer polynomial matrix in u whose determinant does not vanish at u = p."""
    from fractions import Fraction
    from .hodge import expand_at
    while True:
        M = [[[Fraction(rng.randint(-coeff, coeff)) for _ in range(rng.randint(1, degree + 1))]
              for _ in range(n)] for _ in range(n)]
        if expand_at(M, p, n * (degree + 1) + 1).det().is_unit():
            return M
