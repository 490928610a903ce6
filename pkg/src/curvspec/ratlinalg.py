"""Small exact linear-algebra toolkit over the rationals.

Matrices are tuples of tuples of Fraction (or int), vectors are tuples.
Everything here is exact; sizes in this package never exceed 8x8, so
Gaussian elimination with Fractions is plenty fast.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


def as_vec(entries: Sequence) -> Vec:
    return tuple(Fraction(x) for x in entries)


def as_mat(rows: Sequence[Sequence]) -> Mat:
    m = tuple(as_vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def identity(n: int) -> Mat:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a))


def mat_vec(a: Mat, v: Sequence) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def vec_add(u: Sequence, v: Sequence) -> Vec:
    return tuple(Fraction(x) + Fraction(y) for x, y in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vec:
    return tuple(Fraction(x) - Fraction(y) for x, y in zip(u, v))


def vec_scale(c, v: Sequence) -> Vec:
    c = Fraction(c)
    return tuple(c * Fraction(x) for x in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(u, v)), Fraction(0))


def mat_inv(a: Mat) -> Mat:
    """Inverse by Gauss-Jordan elimination; raises ValueError if singular."""
    n = len(a)
    aug = [list(row) + list(identity(n)[i]) for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = 1 / Fraction(aug[col][col])
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def det(a: Mat) -> Fraction:
    n = len(a)
    rows = [list(map(Fraction, r)) for r in a]
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            d = -d
        d *= rows[col][col]
        inv_p = 1 / rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col] != 0:
                f = rows[r][col] * inv_p
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return d


def char_poly(a: Mat) -> list[Fraction]:
    """Coefficients [c_0, ..., c_n] of det(xI - A) = sum c_j x^j, c_n = 1.

    Faddeev-LeVerrier recursion: exact, no eigendecomposition.
    """
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = identity(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        am = mat_mul(a, m)
        c = -Fraction(sum(am[i][i] for i in range(n)), k)
        coeffs[n - k] = c
        m = tuple(
            tuple(am[i][j] + (c if i == j else 0) for j in range(n)) for i in range(n)
        )
    return coeffs


def solve(a: Mat, b: Sequence) -> Vec | None:
    """One solution of A x = b, or None if inconsistent (A may be rectangular)."""
    nrows, ncols = len(a), len(a[0]) if a else 0
    rows = [list(map(Fraction, r)) + [Fraction(x)] for r, x in zip(a, b)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv_p = 1 / rows[r][col]
        rows[r] = [x * inv_p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if rows[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = rows[i][ncols]
    return tuple(x)


def _hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix (row span preserved)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        # euclidean elimination below row r in this column
        while True:
            nz = [i for i in range(r, nrows) if rows[i][col] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(rows[i][col]))
            rows[r], rows[i_min] = rows[i_min], rows[r]
            done = True
            for i in range(r + 1, nrows):
                if rows[i][col] != 0:
                    q = rows[i][col] // rows[r][col]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][col] != 0:
                        done = False
            if done:
                break
        if rows[r][col] != 0:
            if rows[r][col] < 0:
                rows[r] = [-x for x in rows[r]]
            r += 1
    return [row for row in rows if any(row)]


def in_integer_span(vec: Sequence, generators: Sequence[Sequence]) -> bool:
    """Is `vec` an integer combination of the generator vectors? Exact.

    Both vec and generators may have rational entries; everything is scaled
    to integers first, then reduced with a Hermite-style elimination.
    """
    gens = [as_vec(g) for g in generators]
    v = as_vec(vec)
    if not gens:
        return all(x == 0 for x in v)
    denoms = [x.denominator for g in gens for x in g] + [x.denominator for x in v]
    scale = 1
    for d in denoms:
        scale = scale * d // _gcd(scale, d)
    int_gens = [[int(x * scale) for x in g] for g in gens]
    target = [int(x * scale) for x in v]
    basis = _hnf_rows(int_gens)
    # reduce target against the HNF basis
    for row in basis:
        lead = next(j for j, x in enumerate(row) if x != 0)
        if target[lead] % row[lead] == 0:
            q = target[lead] // row[lead]
            target = [x - q * y for x, y in zip(target, row)]
        # if not divisible the final all-zero check fails anyway
    return all(x == 0 for x in target)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a) if a else abs(b)


def kernel_basis(a: Mat) -> list[Vec]:
    """Basis of the right kernel {x : A x = 0}, exact."""
    nrows, ncols = len(a), len(a[0]) if a else 0
    rows = [list(map(Fraction, r)) for r in a]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv_p = 1 / rows[r][col]
        rows[r] = [x * inv_p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -rows[i][fc]
        basis.append(tuple(x))
    return basis


def orthogonal_projector(subspace_basis: Sequence[Sequence]) -> Mat:
    """Matrix of orthogonal projection onto span(subspace_basis), exact.

    P = B^T (B B^T)^{-1} B  for B with the basis vectors as rows.
    """
    b = as_mat(subspace_basis)
    if not b:
        n = 0
        return tuple()
    bt = transpose(b)
    gram_inv = mat_inv(mat_mul(b, bt))
    return mat_mul(mat_mul(bt, gram_inv), b)
