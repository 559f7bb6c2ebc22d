"""Exact integer linear algebra: Smith normal form, saturated difference
lattices, and normalized simplex volumes.

Everything here is exact. Matrices are plain lists of lists of Python ints
(rows), vectors are tuples of ints, and the few places that need division
use fractions.Fraction. The central object is the saturated difference
lattice of a point configuration: the set of integer vectors lying in the
real span of the pairwise differences. Saturation matters because the
normalized volume of a lattice simplex is measured against this lattice,
not against the (possibly finer-indexed) integer span of the differences.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

IntMatrix = list[list[int]]
IntVector = tuple[int, ...]


def identity_matrix(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matrix_multiply(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("matrix dimensions do not match")
    cols = len(b[0]) if b else 0
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
        for i in range(len(a))
    ]


def matrix_vector(a: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v, strict=True))


def integer_determinant(a: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free Bareiss
    elimination. The 0x0 determinant is 1, which makes the volume of a
    single-point simplex equal to 1 and in turn the mu of a monomial equal
    to the monomial itself.
    """
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def matrix_rank(a: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, computed by exact Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in a]
    rank = 0
    cols = len(rows[0]) if rows else 0
    pivot_col = 0
    while rank < len(rows) and pivot_col < cols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][pivot_col]), None)
        if pivot is None:
            pivot_col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][pivot_col]
        for i in range(rank + 1, len(rows)):
            if rows[i][pivot_col]:
                factor = rows[i][pivot_col] / inv
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        pivot_col += 1
    return rank


def solve_linear_system(
    a: Sequence[Sequence[int]], b: Sequence[int]
) -> list[Fraction] | None:
    """Solve a square integer system a*x = b exactly.

    Returns None when the matrix is singular. Forward elimination is
    fraction-free (integer Bareiss), so the only rational arithmetic is the
    final back substitution; this keeps the all-vertex enumeration of
    8-dimensional polytopes fast enough to be done by brute force.
    """
    n = len(a)
    m = [list(a[i]) + [b[i]] for i in range(n)]
    sign_irrelevant_prev = 1
    for k in range(n):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    break
            else:
                return None
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // sign_irrelevant_prev
            m[i][k] = 0
        sign_irrelevant_prev = m[k][k]
    x: list[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(m[i][n])
        for j in range(i + 1, n):
            s -= m[i][j] * x[j]
        x[i] = s / m[i][i]
    return x


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: returns (u, d, v) with a = u*d*v,
    u and v unimodular, d diagonal and each diagonal entry dividing the next.

    The transforms are maintained through inverse elementary updates: a row
    operation L applied to the work matrix (d <- L*d) updates u <- u*L^{-1},
    a column operation R (d <- d*R) updates v <- R^{-1}*v, so a = u*d*v is
    an invariant of the whole reduction.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(row) for row in a]
    if any(len(row) != cols for row in d):
        raise ValueError("matrix is not rectangular")
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def row_swap(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    def col_swap(i: int, j: int) -> None:
        for r in d:
            r[i], r[j] = r[j], r[i]
        v[i], v[j] = v[j], v[i]

    def row_add(i: int, j: int, k: int) -> None:
        # d[i] += k*d[j]; compensate in u by subtracting k*col(i) from col(j)
        d[i] = [x + k * y for x, y in zip(d[i], d[j])]
        for r in u:
            r[j] -= k * r[i]

    def col_add(i: int, j: int, k: int) -> None:
        # col(i) of d += k*col(j); compensate in v on rows
        for r in d:
            r[i] += k * r[j]
        v[j] = [x - k * y for x, y in zip(v[j], v[i])]

    def row_negate(i: int) -> None:
        d[i] = [-x for x in d[i]]
        for r in u:
            r[i] = -r[i]

    t = 0
    while t < rows and t < cols:
        # Re-select the smallest nonzero entry of the trailing block on
        # every pass and reduce with centered remainders: the pivot at
        # least halves every couple of passes, which both bounds the pass
        # count and keeps the intermediate entries from exploding.
        block_empty = False
        while True:
            pivot = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = d[i][j]
                    if x != 0 and (best is None or abs(x) < best):
                        best = abs(x)
                        pivot = (i, j)
            if pivot is None:
                block_empty = True
                break
            if pivot[0] != t:
                row_swap(t, pivot[0])
            if pivot[1] != t:
                col_swap(t, pivot[1])
            if d[t][t] < 0:
                row_negate(t)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t] != 0:
                    r = d[i][t] % p
                    if 2 * r > p:
                        r -= p
                    q = (d[i][t] - r) // p
                    if q != 0:
                        row_add(i, t, -q)
                    if r != 0:
                        dirty = True
            for j in range(t + 1, cols):
                if d[t][j] != 0:
                    r = d[t][j] % p
                    if 2 * r > p:
                        r -= p
                    q = (d[t][j] - r) // p
                    if q != 0:
                        col_add(j, t, -q)
                    if r != 0:
                        dirty = True
            if dirty:
                continue
            # pivot clears its row and column; enforce divisibility of the
            # remaining block by folding an offending row into row t
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if d[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender, 1)
        if block_empty:
            break
        t += 1
    return u, d, v


def hermite_reduce_rows(basis: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form of a full-row-rank integer matrix.

    Used only to make lattice bases canonical (positive pivots, entries
    above each pivot reduced), so equal lattices get equal bases.
    """
    rows = [list(r) for r in basis]
    if not rows:
        return []
    cols = len(rows[0])
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        # euclidean reduction below the pivot
        while True:
            nonzero = [i for i in range(r + 1, len(rows)) if rows[i][c] != 0]
            if not nonzero:
                break
            for i in nonzero:
                q = rows[i][c] // rows[r][c]
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
            nonzero = [i for i in range(r + 1, len(rows)) if rows[i][c] != 0]
            if nonzero:
                i = min(nonzero, key=lambda i: abs(rows[i][c]))
                rows[r], rows[i] = rows[i], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return rows[:r]


def difference_lattice_basis(
    points: Sequence[Sequence[int]],
) -> tuple[int, IntMatrix]:
    """Rank and basis of the saturated difference lattice of a point set.

    The lattice is (real span of all pairwise differences) intersected with
    the ambient integer lattice. Taking the Smith normal form diff = u*d*v,
    the real row span of diff equals the span of the first rank rows of v;
    since v is unimodular those rows already generate the saturated lattice,
    so no extra index computation is needed. The returned basis is put in
    Hermite normal form to make it canonical.

    A single point (or an empty difference set) has rank 0 and empty basis.
    """
    if not points:
        raise ValueError("empty point list")
    base = points[0]
    diffs = [
        [x - y for x, y in zip(p, base)] for p in points[1:]
    ]
    diffs = [d for d in diffs if any(d)]
    if not diffs:
        return 0, ()
    _, d, v = smith_normal_form(diffs)
    rank = sum(1 for i in range(min(len(d), len(d[0]))) if d[i][i] != 0)
    basis = [v[i] for i in range(rank)]
    return rank, tuple(tuple(row) for row in hermite_reduce_rows(basis))


def lattice_coordinates(
    vector: Sequence[int], basis: Sequence[Sequence[int]]
) -> IntVector:
    """Coordinates of an integer vector with respect to a saturated lattice
    basis (given as rows). Raises if the vector is not in the lattice; for a
    saturated basis this only happens when it is outside the real span.
    """
    r = len(basis)
    if r == 0:
        if any(vector):
            raise ValueError("vector outside the lattice span")
        return ()
    n = len(basis[0])
    # solve coeffs * basis = vector by eliminating on the transpose
    aug = [[Fraction(basis[j][i]) for j in range(r)] + [Fraction(vector[i])] for i in range(n)]
    coords: list[Fraction | None] = [None] * r
    row = 0
    for c in range(r):
        pivot = next((i for i in range(row, n) if aug[i][c]), None)
        if pivot is None:
            raise ValueError("basis rows are dependent")
        aug[row], aug[pivot] = aug[pivot], aug[row]
        for i in range(n):
            if i != row and aug[i][c]:
                f = aug[i][c] / aug[row][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        row += 1
    for i in range(row, n):
        if aug[i][r] != 0:
            raise ValueError("vector outside the lattice span")
    out = []
    for c in range(r):
        val = aug[c][r] / aug[c][c]
        if val.denominator != 1:
            raise ValueError("vector not in the lattice generated by the basis")
        out.append(int(val))
    return tuple(out)


def simplex_normalized_volume(
    points: Sequence[Sequence[int]], chart: Sequence[Sequence[int]]
) -> int:
    """Normalized volume r! * vol of the simplex spanned by r+1 lattice
    points, measured in the lattice described by the chart (basis rows of
    the saturated difference lattice of the ambient configuration).

    Returns 0 exactly when the points are affinely dependent. The number of
    points must be one more than the chart rank; anything else is a caller
    bug and raises.
    """
    r = len(chart)
    if len(points) != r + 1:
        raise ValueError(
            f"expected {r + 1} points for a rank-{r} chart, got {len(points)}"
        )
    if r == 0:
        return 1
    base = points[0]
    rows = []
    for p in points[1:]:
        diff = [x - y for x, y in zip(p, base)]
        rows.append(list(lattice_coordinates(diff, chart)))
    return abs(integer_determinant(rows))


def primitive_vector(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    from math import gcd

    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)
