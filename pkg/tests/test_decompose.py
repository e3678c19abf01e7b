import random

import pytest

from kisindd.decompose import (cartan_position, in_iwahori, in_parahoric, invert_matrix,
                               iwahori_decompose, iwahori_reduce, minors_divisors,
                               monomial_matrix, parahoric_reduce, smith_normal_form)
from kisindd.errors import DimensionMismatch, PrecisionExhausted, SingularMatrix
from kisindd.fields import FieldSpec
from kisindd.matrix import SeriesMatrix
from kisindd.sampling import (random_affine, random_matrix, random_parahoric, random_unimodular)
from kisindd.series import TruncSeries
from kisindd.weyl import (AffinePermutation, BlockPartition, double_coset, length,
                          min_double_coset_rep)

F5 = FieldSpec.prime(5)
F9 = FieldSpec(3, 2, (1, 0, 1))


def mat(rows, prec=8, field=F5):
    return SeriesMatrix.from_polys(field, rows, prec)


def exact_length_oracle(M):
    """Index of I cap M I M^-1 in I for a monomial matrix, counted entrywise."""
    n = M.n
    pos = {}
    for i, j, x in M.entries():
        if x.terms:
            pos[i] = (j, x.valuation())
    total = 0
    for x in range(n):
        for y in range(n):
            cx, kx = pos[x]
            cy, ky = pos[y]
            total += max(0, (cx > cy) + kx - ky - (x > y))
    return total


# -- matrices -------------------------------------------------------------------

def test_matrix_basics():
    A = mat([[[1], [0, 1]], [[0], [1]]])
    B = mat([[[2], [0]], [[1], [1]]])
    assert (A @ B)[0, 0].coefficients()[:2] == [2, 1]
    assert (A + B - B).congruent(A)
    assert A.det().is_unit()
    with pytest.raises(DimensionMismatch):
        A @ SeriesMatrix.identity(F5, 3, 8)
    with pytest.raises(DimensionMismatch):
        SeriesMatrix([[TruncSeries.one(F5, 3)], []])


def test_shared_precision():
    M = SeriesMatrix([[TruncSeries.one(F5, 4), TruncSeries.zero(F5, 9)],
                      [TruncSeries.zero(F5, 9), TruncSeries.one(F5, 6)]])
    assert M.prec == 4 and all(x.prec == 4 for _, _, x in M.entries())


def test_inverse_matrix():
    rng = random.Random(0)
    g = random_unimodular(F5, 3, 10, rng)
    assert (g @ invert_matrix(g)).congruent(SeriesMatrix.identity(F5, 3, 10))


# -- Smith normal form ----------------------------------------------------------

def test_snf_diagonal():
    d, _, _ = smith_normal_form(mat([[[0, 1], [0]], [[0], [1]]]))
    assert d == (0, 1)


def test_snf_unit_entry_forces_zero():
    d, _, _ = smith_normal_form(mat([[[0, 1], [1]], [[0], [0, 1]]]))
    assert d == (0, 2)


def test_snf_random_against_minors():
    rng = random.Random(11)
    checked = 0
    while checked < 60:
        M = random_matrix(F5, 3, 12, rng, max_val=2)
        if M.det().valuation() is None:
            continue
        d, L, R = smith_normal_form(M)
        assert d == minors_divisors(M)
        assert list(d) == sorted(d)
        assert sum(d) == M.det().valuation()
        assert L.det().is_unit() and R.det().is_unit()
        D = L @ M @ R
        assert D.congruent(SeriesMatrix.diagonal(F5, d, D.prec))
        checked += 1


def test_snf_laurent_shift():
    M = SeriesMatrix.diagonal(F5, [-2, 1], 6)
    d, L, R = smith_normal_form(M)
    assert d == (-2, 1)
    assert cartan_position(M) == (1, -2)


def test_snf_singular():
    with pytest.raises(SingularMatrix):
        smith_normal_form(SeriesMatrix.diagonal(F5, [0, 7], 5))


def test_snf_over_extension_field():
    x = F9.encode([0, 1])
    M = SeriesMatrix([[TruncSeries(F9, {0: x, 1: 1}, 6), TruncSeries(F9, {1: 1}, 6)],
                      [TruncSeries(F9, {1: x}, 6), TruncSeries(F9, {2: 1}, 6)]])
    assert smith_normal_form(M)[0] == minors_divisors(M)


# -- Cartan position --------------------------------------------------------------

def test_cartan_identity_and_diagonal():
    assert cartan_position(SeriesMatrix.identity(F5, 3, 5)) == (0, 0, 0)
    assert cartan_position(SeriesMatrix.diagonal(F5, [2, 1, 0], 6)) == (2, 1, 0)


def test_cartan_invariance():
    rng = random.Random(7)
    D = SeriesMatrix.diagonal(F5, [2, 1, 0], 12)
    for _ in range(50):
        g1 = random_unimodular(F5, 3, 12, rng)
        g2 = random_unimodular(F5, 3, 12, rng)
        assert cartan_position(g1 @ D @ g2) == (2, 1, 0)


# -- Iwahori reduction ------------------------------------------------------------

def test_iwahori_monomial_input():
    M = mat([[[0], [1]], [[0, 1], [0]]])
    w = iwahori_reduce(M)
    assert w.window == (2, 3)
    lam, perm = w.parts()
    assert lam == (1, 0) and perm == (2, 1)
    assert length(w) == 0


def test_iwahori_identity():
    assert iwahori_reduce(SeriesMatrix.identity(F5, 3, 5)) == AffinePermutation.identity(3)


def test_monomial_matrix_realization():
    # diag(u^lam) is t_lam, and the entrywise index formula reproduces the length
    assert iwahori_reduce(SeriesMatrix.diagonal(F5, [2, 0, 1], 6)) == AffinePermutation.translation((2, 0, 1))
    rng = random.Random(3)
    for _ in range(300):
        w = random_affine(rng.randint(1, 4), 3, rng)
        M = monomial_matrix(w, F5, 4)
        assert iwahori_reduce(M) == w
        assert exact_length_oracle(M) == length(w)


def test_iwahori_generate_and_recover():
    rng = random.Random(5)
    for _ in range(80):
        n = rng.randint(1, 3)
        w = random_affine(n, 3, rng)
        borel = BlockPartition.borel(n)
        i1 = random_parahoric(F5, borel, 20, rng)
        i2 = random_parahoric(F5, borel, 20, rng)
        M = i1 @ monomial_matrix(w, F5, 20) @ i2
        got, c1, c2 = iwahori_decompose(M)
        assert got == w
        assert in_iwahori(c1) and in_iwahori(c2)
        assert (c1 @ monomial_matrix(got, F5, 20) @ c2).congruent(M)


def test_iwahori_invariance():
    rng = random.Random(9)
    for _ in range(30):
        M = random_matrix(F5, 3, 16, rng, max_val=3)
        if M.det().valuation() is None:
            continue
        w = iwahori_reduce(M)
        b = BlockPartition.borel(3)
        assert iwahori_reduce(random_parahoric(F5, b, 16, rng) @ M @ random_parahoric(F5, b, 16, rng)) == w


def test_precision_exhausted():
    M = SeriesMatrix([[TruncSeries.one(F5, 4), TruncSeries.zero(F5, 4)],
                      [TruncSeries.zero(F5, 4), TruncSeries.zero(F5, 4)]])
    with pytest.raises(PrecisionExhausted):
        iwahori_reduce(M)


def test_monotone_precision():
    rng = random.Random(13)
    for _ in range(20):
        w = random_affine(3, 2, rng)
        polys = monomial_matrix(w, F5, 10)
        b = BlockPartition.borel(3)
        M = random_parahoric(F5, b, 10, rng) @ polys @ random_parahoric(F5, b, 10, rng)
        # the same polynomial entries, read at twice the precision
        M2 = SeriesMatrix([[TruncSeries(F5, x.terms, 20) for x in r] for r in M.rows])
        assert iwahori_reduce(M) == iwahori_reduce(M2)
        if M.det().valuation() is not None:
            assert smith_normal_form(M)[0] == smith_normal_form(M2)[0]


# -- parahoric reduction ---------------------------------------------------------------

def test_parahoric_trivial_coset():
    rng = random.Random(2)
    for sizes in ([1, 1, 1], [2, 1], [1, 2], [3]):
        b = BlockPartition(sizes)
        for _ in range(10):
            g = random_parahoric(F5, b, 10, rng)
            assert in_parahoric(g, b)
            assert parahoric_reduce(g, b) == AffinePermutation.identity(3)


def test_parahoric_full_block_is_cartan():
    rng = random.Random(4)
    full = BlockPartition.full(3)
    for _ in range(30):
        M = random_matrix(F5, 3, 14, rng, max_val=2)
        if M.det().valuation() is None:
            continue
        t = AffinePermutation.translation(cartan_position(M))
        assert parahoric_reduce(M, full) == min_double_coset_rep(t, full)


def test_parahoric_generate_and_recover():
    rng = random.Random(8)
    for _ in range(60):
        n = rng.randint(1, 3)
        sizes = []
        left = n
        while left:
            s = rng.randint(1, left)
            sizes.append(s)
            left -= s
        b = BlockPartition(sizes)
        w = random_affine(n, 2, rng)
        M = random_parahoric(F5, b, 16, rng) @ monomial_matrix(w, F5, 16) @ random_parahoric(F5, b, 16, rng)
        rep = parahoric_reduce(M, b)
        coset = double_coset(w, b)
        assert rep in coset
        assert length(rep) == min(length(x) for x in coset)


def test_parahoric_refines_to_iwahori():
    rng = random.Random(6)
    M = random_unimodular(F5, 3, 10, rng) @ SeriesMatrix.diagonal(F5, [1, 0, 2], 10)
    assert parahoric_reduce(M, BlockPartition.borel(3)) == iwahori_reduce(M)
    assert parahoric_reduce(M, [[1], [2], [3]]) == iwahori_reduce(M)
