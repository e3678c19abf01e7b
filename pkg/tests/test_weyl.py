import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kisindd.errors import DimensionMismatch
from kisindd.weyl import (AffinePermutation, BlockPartition, admissible_set, admissible_set_bfs,
                          bruhat_leq, covers_below, dominance_leq, double_coset,
                          downward_closure, length, length_iwahori_matsumoto,
                          max_double_coset_rep, min_double_coset_rep, multiply, orbit,
                          parahoric_admissible_set, random_element, reflection_bound)

T = AffinePermutation.translation


def compose_windows(a, b):
    """Composition straight from the periodic extension: (a o b)(i) = a(b(i))."""
    n = a.n
    def ext(w, x):
        q, r = divmod(x - 1, n)
        return w.window[r] + q * n
    return AffinePermutation([ext(a, ext(b, i)) for i in range(1, n + 1)])


def subword_closure(w):
    """Everything below w via the subword property of one reduced expression."""
    word = []
    x = w
    while length(x) > 0:
        s = x.right_descents()[0]
        word.append(s)
        x = x.right_simple(s)
    word.reverse()
    out = set()
    for mask in itertools.product([0, 1], repeat=len(word)):
        y = x
        for m, s in zip(mask, word):
            if m:
                y = y.right_simple(s)
        out.add(y)
    return out


# -- structure ------------------------------------------------------------------

def test_window_validation():
    with pytest.raises(ValueError):
        AffinePermutation([1, 3])
    w = AffinePermutation([3, 2])
    assert w(5) == 7 and w(0) == 0 and w(-1) == 1


def test_parts_roundtrip():
    rng = random.Random(0)
    for _ in range(200):
        w = random_element(rng.randint(1, 4), 3, rng)
        lam, perm = w.parts()
        assert AffinePermutation.from_parts(lam, perm) == w
        assert w.shift == w.n * sum(lam)


def test_translations_commute():
    a, b = T((1, 0, 2)), T((0, -1, 1))
    assert a * b == b * a == T((1, -1, 3))


def test_inverse():
    rng = random.Random(1)
    for _ in range(100):
        w = random_element(3, 3, rng)
        assert w * w.inverse() == AffinePermutation.identity(3)


def test_product_example():
    s = (2, 1)
    a = AffinePermutation.from_parts((1, 0), s)
    b = AffinePermutation.from_parts((0, 1), s)
    assert multiply(a, b) == compose_windows(a, b)
    # (lam1 + w1 lam2, w1 w2) = ((1,0) + (1,0), id)
    assert multiply(a, b) == T((2, 0))


def test_product_rule():
    rng = random.Random(2)
    for _ in range(300):
        n = rng.randint(1, 4)
        a, b = random_element(n, 3, rng), random_element(n, 3, rng)
        la, wa = a.parts()
        lb, wb = b.parts()
        w_lb = [lb[wa.index(i + 1)] for i in range(n)]  # (w lam)_i = lam_{w^-1(i)}
        expected = AffinePermutation.from_parts([x + y for x, y in zip(la, w_lb)],
                                                [wa[wb[i] - 1] for i in range(n)])
        assert a * b == expected == compose_windows(a, b)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        multiply(AffinePermutation.identity(2), AffinePermutation.identity(3))
    with pytest.raises(DimensionMismatch):
        bruhat_leq(AffinePermutation.identity(2), AffinePermutation.identity(3))


# -- length ---------------------------------------------------------------------

def test_length_examples():
    assert length(AffinePermutation.identity(4)) == 0
    assert length(T((1, 0))) == 1
    for p in itertools.permutations(range(1, 4)):
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        assert length(AffinePermutation(p)) == inv
    assert length(AffinePermutation.rotation(3)) == 0


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 4), st.randoms(use_true_random=False))
def test_two_length_formulas_agree(n, rng):
    w = random_element(n, 4, rng)
    assert length(w) == length_iwahori_matsumoto(w)


def test_length_subadditive_and_reduced_words():
    rng = random.Random(3)
    for _ in range(200):
        a, b = random_element(3, 2, rng), random_element(3, 2, rng)
        assert length(a * b) <= length(a) + length(b)
    # a reduced word built greedily has additive length
    w = AffinePermutation.identity(3)
    for step in range(8):
        for i in range(3):
            x = w.right_simple(i)
            if length(x) == length(w) + 1:
                w = x
                break
        assert length(w) == step + 1


def test_simple_reflections_left_and_right():
    rng = random.Random(4)
    for _ in range(100):
        w = random_element(3, 2, rng)
        for i in range(3):
            s = AffinePermutation.simple(3, i)
            assert w.right_simple(i) == w * s
            assert w.left_simple(i) == s * w
            assert (i in w.right_descents()) == (length(w * s) < length(w))


# -- Bruhat order -----------------------------------------------------------------

def test_bruhat_basic():
    rng = random.Random(5)
    for _ in range(50):
        w = random_element(3, 2, rng)
        assert bruhat_leq(w, w)
        if w.shift == 0:
            assert bruhat_leq(AffinePermutation.identity(3), w)
        else:
            assert not bruhat_leq(AffinePermutation.identity(3), w)


def test_bruhat_adm_10():
    adm = sorted(admissible_set((1, 0)))
    bottom = AffinePermutation([2, 3])
    assert len(adm) == 3
    for w in adm:
        assert bruhat_leq(bottom, w)
    assert not bruhat_leq(T((1, 0)), T((0, 1)))
    assert not bruhat_leq(T((0, 1)), T((1, 0)))


def test_bruhat_matches_subword_and_bfs():
    rng = random.Random(6)
    for _ in range(25):
        n = rng.randint(2, 3)
        b = random_element(n, 1, rng)
        below = subword_closure(b)
        assert below == downward_closure([b], reflection_bound(b.parts()[0]))
        for a in below:
            assert bruhat_leq(a, b)
        # sampled non-members with the same shift
        for _ in range(30):
            a = random_element(n, 2, rng)
            if a.shift == b.shift:
                assert bruhat_leq(a, b) == (a in below)


def test_bruhat_partial_order_graded():
    elems = sorted(admissible_set((2, 1, 0)))
    for a in elems:
        for b in elems:
            if a != b and bruhat_leq(a, b):
                assert length(a) < length(b)
                assert not bruhat_leq(b, a)
    rng = random.Random(7)
    for _ in range(300):
        a, b, c = (rng.choice(elems) for _ in range(3))
        if bruhat_leq(a, b) and bruhat_leq(b, c):
            assert bruhat_leq(a, c)


# -- covers ---------------------------------------------------------------------

def test_covers():
    assert covers_below(AffinePermutation.identity(3), 5) == set()
    cov = covers_below(T((1, 0)), 3)
    assert cov == {AffinePermutation([2, 3])}
    rng = random.Random(8)
    for _ in range(30):
        w = random_element(3, 2, rng)
        for x in covers_below(w, 4):
            assert length(x) == length(w) - 1 and bruhat_leq(x, w)


# -- admissible sets --------------------------------------------------------------

def test_adm_zero():
    assert admissible_set((0, 0, 0)) == {AffinePermutation.identity(3)}


def test_adm_10():
    adm = admissible_set((1, 0))
    assert len(adm) == 3
    maximal = [w for w in adm if not any(w != x and bruhat_leq(w, x) for x in adm)]
    assert set(maximal) == {T((1, 0)), T((0, 1))}


@pytest.mark.parametrize("lam", [(2, 1, 0), (1, 1, 0), (2, 0, 0), (2, 2, 1)])
def test_adm_against_bfs(lam):
    adm = admissible_set(lam)
    assert adm == admissible_set_bfs(lam)
    assert adm == admissible_set_bfs(lam, reflection_bound(lam) + 1)
    assert adm == set().union(*(subword_closure(T(mu)) for mu in orbit(lam)))


def test_adm_orbit_invariance_and_maximal():
    for lam in [(0, 2, 1), (1, 0, 1), (0, 1)]:
        adm = admissible_set(lam)
        assert adm == admissible_set(sorted(lam, reverse=True))
        tops = {T(mu) for mu in orbit(lam)}
        assert tops <= adm
        maximal = {w for w in adm if not any(w != x and bruhat_leq(w, x) for x in adm)}
        assert maximal == tops and len(maximal) == len(orbit(lam))


def test_dominance():
    assert dominance_leq((1, 1, 0), (2, 0, 0))
    assert not dominance_leq((2, 0, 0), (1, 1, 0))
    assert not dominance_leq((1, 0, 0), (1, 1, 0))
    assert dominance_leq((0, 1), (1, 0))


# -- double cosets --------------------------------------------------------------------

def test_block_partition():
    b = BlockPartition.parse("1,2|3")
    assert b.sizes == (2, 1) and b.simple_indices() == [1] and len(b.weyl_group()) == 2
    with pytest.raises(ValueError):
        BlockPartition.from_blocks([[1, 3], [2]])
    assert BlockPartition.borel(3).is_borel()


def test_min_rep_examples():
    b = BlockPartition.parse("1,2|3")
    w = AffinePermutation.identity(3)
    assert min_double_coset_rep(w, b) == w
    rng = random.Random(9)
    for _ in range(50):
        w = random_element(3, 2, rng)
        s = AffinePermutation.simple(3, 1)
        if length(s * w) > length(w):
            assert min_double_coset_rep(s * w, b) == min_double_coset_rep(w, b)


@pytest.mark.parametrize("sizes", [(2, 1), (1, 2), (3,), (1, 1, 1)])
def test_min_and_max_reps_exhaustive(sizes):
    b = BlockPartition(sizes)
    rng = random.Random(10)
    for _ in range(40):
        w = random_element(3, 2, rng)
        coset = double_coset(w, b)
        lengths = sorted(length(x) for x in coset)
        lo = min_double_coset_rep(w, b)
        hi = max_double_coset_rep(w, b)
        assert lo in coset and hi in coset
        assert [x for x in coset if length(x) == lengths[0]] == [lo]
        assert [x for x in coset if length(x) == lengths[-1]] == [hi]


def test_parahoric_adm_singletons_and_full():
    lam = (2, 1, 0)
    assert parahoric_admissible_set(lam, BlockPartition.borel(3)) == admissible_set(lam)
    full = BlockPartition.full(3)
    reps = parahoric_admissible_set(lam, full)
    # one class per dominant cocharacter below lam: (2,1,0) and (1,1,1)
    expected = {min_double_coset_rep(T(mu), full) for mu in [(2, 1, 0), (1, 1, 1)]}
    assert reps == expected
    # minuscule: a single class
    assert len(parahoric_admissible_set((1, 0, 0), full)) == 1


def test_parahoric_adm_saturation_oracle():
    lam, b = (1, 1, 0), BlockPartition.parse("1,2|3")
    wp = b.weyl_group()
    adm = admissible_set(lam)
    saturated = {x * w * y for w in adm for x in wp for y in wp}
    minimized = {min(double_coset(w, b), key=lambda z: (length(z), z.window)) for w in saturated}
    got = parahoric_admissible_set(lam, b)
    assert got == minimized
    assert set().union(*(double_coset(w, b) for w in got)) == saturated


def test_parahoric_adm_downward_closed():
    for lam, spec in [((1, 1, 0), "1,2|3"), ((2, 1, 0), "1|2,3"), ((2, 0), "1,2")]:
        b = BlockPartition.parse(spec)
        reps = parahoric_admissible_set(lam, b)
        for w in reps:
            for x in covers_below(max_double_coset_rep(w, b), reflection_bound(lam)):
                assert min_double_coset_rep(x, b) in reps
