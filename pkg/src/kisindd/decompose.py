"""Smith normal form, Cartan position and Iwahori/parahoric reduction.

All eliminations run inside the power-series ring. Laurent input is first
multiplied by a single power u^c; the shift is undone on the exponents at the
end.

Matrix realization of the affine Weyl group: row i of ``monomial_matrix(w)``
has u^k in column c, where w(i) = c + n*k. With this choice diag(u^lam) is the
translation t_lam and the double cosets of the Iwahori subgroup (upper
triangular mod u) are indexed compatibly with the length function in
:mod:`kisindd.weyl`.
"""
from __future__ import annotations

from typing import Sequence

from .errors import NotAUnit, PrecisionExhausted, SingularMatrix
from .matrix import SeriesMatrix
from .series import TruncSeries
from .weyl import AffinePermutation, BlockPartition, min_double_coset_rep


def invert_series(s: TruncSeries) -> TruncSeries:
    return s.inverse()


# -- mutable helpers ----------------------------------------------------------

def _rows(M: SeriesMatrix) -> list[list[TruncSeries]]:
    return [list(r) for r in M.rows]


def _row_add(A, x, r, t):
    """row x += t * row r"""
    A[x] = [a + t * b for a, b in zip(A[x], A[r])]


def _col_add(A, b, a, t):
    """col b += t * col a"""
    for row in A:
        row[b] = row[b] + t * row[a]


def _row_scale(A, x, t):
    A[x] = [t * a for a in A[x]]


def _col_scale(A, b, t):
    for row in A:
        row[b] = t * row[b]


def _identity_rows(M: SeriesMatrix, prec: int):
    return _rows(SeriesMatrix.identity(M.field, M.n, prec, M.var))


def _laurent_shift(M: SeriesMatrix) -> tuple[int, SeriesMatrix]:
    v = M.min_valuation()
    c = -v if v is not None and v < 0 else 0
    return c, (M.shift(c) if c else M)


# -- Smith normal form --------------------------------------------------------

def smith_normal_form(M: SeriesMatrix):
    """Return (divisors, left, right) with left*M*right = diag(u^d), d non-decreasing."""
    det = M.det()
    if det.valuation() is None:
        raise SingularMatrix(f"determinant vanishes modulo {M.var}^{det.prec}")
    c, Ms = _laurent_shift(M)
    n = M.n
    A = _rows(Ms)
    L = _identity_rows(Ms, Ms.prec)
    R = _identity_rows(Ms, Ms.prec)
    divisors = []
    for k in range(n):
        best = None
        unknown = None
        for i in range(k, n):
            for j in range(k, n):
                v = A[i][j].valuation()
                if v is None:
                    p = A[i][j].prec
                    unknown = p if unknown is None else min(unknown, p)
                elif best is None or v < best[0]:
                    best = (v, i, j)
        if best is None or (unknown is not None and best[0] >= unknown):
            raise PrecisionExhausted(f"cannot certify the pivot valuation at step {k + 1}")
        d, i, j = best
        A[k], A[i] = A[i], A[k]
        L[k], L[i] = L[i], L[k]
        for row in A:
            row[k], row[j] = row[j], row[k]
        for row in R:
            row[k], row[j] = row[j], row[k]
        _, unit = A[k][k].unit_part()
        uinv = unit.inverse()
        _row_scale(A, k, uinv)
        _row_scale(L, k, uinv)
        piv = A[k][k]
        for x in range(k + 1, n):
            if A[x][k].terms:
                t = -(A[x][k] / piv)
                _row_add(A, x, k, t)
                _row_add(L, x, k, t)
        for b in range(k + 1, n):
            if A[k][b].terms:
                t = -(A[k][b] / piv)
                _col_add(A, b, k, t)
                _col_add(R, b, k, t)
        divisors.append(d - c)
    left = SeriesMatrix(L)
    right = SeriesMatrix(R)
    return tuple(divisors), left, right


def cartan_position(M: SeriesMatrix) -> tuple[int, ...]:
    d, _, _ = smith_normal_form(M)
    return tuple(sorted(d, reverse=True))


def invert_matrix(M: SeriesMatrix) -> SeriesMatrix:
    d, left, right = smith_normal_form(M)
    if any(d):
        raise NotAUnit(f"matrix has elementary divisors {d}; not invertible over the series ring")
    return right @ left


def minors_divisors(M: SeriesMatrix) -> tuple[int, ...]:
    """Elementary divisors from minimal valuations of k x k minors (slow oracle)."""
    import itertools
    n = M.n
    sums = [0]
    for k in range(1, n + 1):
        best = None
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                sub = SeriesMatrix([[M[i, j] for j in cols] for i in rows])
                v = sub.det().valuation()
                if v is not None and (best is None or v < best):
                    best = v
        if best is None:
            raise SingularMatrix(f"all {k}x{k} minors vanish at precision")
        sums.append(best)
    return tuple(sums[k] - sums[k - 1] for k in range(1, n + 1))


# -- affine Weyl group elements as matrices -----------------------------------

def monomial_matrix(w: AffinePermutation, field, prec: int, var: str = "u") -> SeriesMatrix:
    n = w.n
    z = TruncSeries.zero(field, prec, var)
    rows = [[z] * n for _ in range(n)]
    for i, s in enumerate(w.window):
        k, c = divmod(s - 1, n)
        rows[i][c] = TruncSeries.monomial(field, k, prec, var=var)
    return SeriesMatrix(rows)


def in_iwahori(g: SeriesMatrix) -> bool:
    return in_parahoric(g, BlockPartition.borel(g.n))


def in_parahoric(g: SeriesMatrix, blocks: BlockPartition) -> bool:
    """Integral, unit determinant, and block upper triangular mod u."""
    if not g.is_integral():
        return False
    if not g.det().is_unit():
        return False
    owner = [b for b, blk in enumerate(blocks.blocks) for _ in blk]
    red = g.mod_u()
    return all(not red[i][j] for i in range(g.n) for j in range(g.n) if owner[i] > owner[j])


# -- Iwahori reduction --------------------------------------------------------

def iwahori_decompose(M: SeriesMatrix, certificate: bool = True):
    """Return (w, i1, i2) with i1, i2 in the Iwahori subgroup and i1*matrix(w)*i2 = M.

    Pivot rule: among active entries pick the one maximizing r - c - n*val.
    Such a pivot can clear its row by column operations and its column by row
    operations that stay inside the Iwahori subgroup. Entries that vanish at
    precision are only bounded, so the pivot must beat every such bound.
    """
    n = M.n
    c0, Ms = _laurent_shift(M)
    A = _rows(Ms)
    prec = Ms.prec
    if certificate:
        L = _identity_rows(Ms, prec)
        Linv = _identity_rows(Ms, prec)
        R = _identity_rows(Ms, prec)
        Rinv = _identity_rows(Ms, prec)
    rows, cols = set(range(n)), set(range(n))
    window = [0] * n
    while rows:
        best = None
        bound = None
        for r in rows:
            for c in cols:
                x = A[r][c]
                v = x.valuation()
                if v is None:
                    b = r - c - n * x.prec
                    bound = b if bound is None else max(bound, b)
                    continue
                D = r - c - n * v
                if best is None or D > best[0]:
                    best = (D, r, c, v)
        if best is None or (bound is not None and best[0] <= bound):
            raise PrecisionExhausted("pivot for the Iwahori reduction cannot be certified")
        _, r, c, k = best
        _, unit = A[r][c].unit_part()
        uinv = unit.inverse()
        _row_scale(A, r, uinv)
        if certificate:
            _row_scale(L, r, uinv)
            _col_scale(Linv, r, unit)
        piv = A[r][c]
        for b in cols:
            if b != c and A[r][b].terms:
                t = -(A[r][b] / piv)
                _col_add(A, b, c, t)
                if certificate:
                    _col_add(R, b, c, t)
                    _row_add(Rinv, c, b, -t)
        for x in rows:
            if x != r and A[x][c].terms:
                t = -(A[x][c] / piv)
                _row_add(A, x, r, t)
                if certificate:
                    _row_add(L, x, r, t)
                    _col_add(Linv, r, x, -t)
        window[r] = c + 1 + n * (k - c0)
        rows.discard(r)
        cols.discard(c)
    w = AffinePermutation(window)
    if not certificate:
        return w, None, None
    return w, SeriesMatrix(Linv), SeriesMatrix(Rinv)


def iwahori_reduce(M: SeriesMatrix) -> AffinePermutation:
    return iwahori_decompose(M, certificate=False)[0]


def parahoric_reduce(M: SeriesMatrix, blocks: BlockPartition | Sequence[Sequence[int]]) -> AffinePermutation:
    if not isinstance(blocks, BlockPartition):
        blocks = BlockPartition.from_blocks(blocks)
    return min_double_coset_rep(iwahori_reduce(M), blocks)
