"""Exact integer lattice toolkit.

Hermite and Smith normal forms over the integers, saturated kernels,
lattice intersection/sum/image, finite index, and mod-2 fixed counts.
Everything runs on Python's arbitrary-precision integers; no floating
point is used anywhere.

Matrices are lists of rows of ints.  A :class:`Sublattice` stores its
basis rows in Hermite normal form, which makes equality, hashing and
subset tests canonical.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InfiniteIndexError,
    NotSublatticeError,
    ShapeError,
)

Matrix = list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


# ---------------------------------------------------------------------------
# dense matrix helpers


def identity_matrix(k: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def zero_matrix(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def copy_matrix(mat) -> Matrix:
    return [list(row) for row in mat]


def matrix_shape(mat) -> tuple[int, int]:
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    for row in mat:
        if len(row) != cols:
            raise ShapeError("ragged matrix")
    return rows, cols


def matrix_mul(a, b) -> Matrix:
    ra, ca = matrix_shape(a)
    rb, cb = matrix_shape(b)
    if ca != rb:
        raise ShapeError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matrix_add(a, b) -> Matrix:
    if matrix_shape(a) != matrix_shape(b):
        raise ShapeError("shape mismatch in addition")
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matrix_sub(a, b) -> Matrix:
    if matrix_shape(a) != matrix_shape(b):
        raise ShapeError("shape mismatch in subtraction")
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matrix_vec(mat, vec) -> list[int]:
    rows, cols = matrix_shape(mat)
    if cols != len(vec):
        raise ShapeError("vector length mismatch")
    return [sum(x * v for x, v in zip(row, vec)) for row in mat]


def transpose(mat) -> Matrix:
    rows, cols = matrix_shape(mat)
    return [[mat[i][j] for i in range(rows)] for j in range(cols)]


def matrix_eq(a, b) -> bool:
    return [list(r) for r in a] == [list(r) for r in b]


def is_identity(mat) -> bool:
    rows, cols = matrix_shape(mat)
    if rows != cols:
        return False
    return all(mat[i][j] == (1 if i == j else 0) for i in range(rows) for j in range(cols))


def matrix_trace(mat) -> int:
    rows, cols = matrix_shape(mat)
    if rows != cols:
        raise ShapeError("trace of a non-square matrix")
    return sum(mat[i][i] for i in range(rows))


def matrix_power(mat, k: int) -> Matrix:
    rows, cols = matrix_shape(mat)
    if rows != cols:
        raise ShapeError("power of a non-square matrix")
    if k < 0:
        raise ValueError("negative power not supported")
    result = identity_matrix(rows)
    base = copy_matrix(mat)
    while k:
        if k & 1:
            result = matrix_mul(result, base)
        k >>= 1
        if k:
            base = matrix_mul(base, base)
    return result


def det(mat) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    rows, cols = matrix_shape(mat)
    if rows != cols:
        raise ShapeError("determinant of a non-square matrix")
    if rows == 0:
        return 1
    a = copy_matrix(mat)
    sign = 1
    prev = 1
    for k in range(rows - 1):
        if a[k][k] == 0:
            for i in range(k + 1, rows):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, rows):
            for j in range(k + 1, rows):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[rows - 1][rows - 1]


def char_poly(mat) -> list[int]:
    """Coefficients [1, c1, ..., cR] of det(xI - M), via Faddeev-LeVerrier.

    The intermediate divisions are exact for integer input.
    """
    rows, cols = matrix_shape(mat)
    if rows != cols:
        raise ShapeError("characteristic polynomial of a non-square matrix")
    coeffs = [1]
    work = zero_matrix(rows, rows)
    for k in range(1, rows + 1):
        for i in range(rows):
            work[i][i] += coeffs[-1]
        work = matrix_mul(mat, work)
        tr = matrix_trace(work)
        assert tr % k == 0
        coeffs.append(-tr // k)
    return coeffs


def poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_pow(p: list[int], k: int) -> list[int]:
    out = [1]
    for _ in range(k):
        out = poly_mul(out, p)
    return out


# ---------------------------------------------------------------------------
# Hermite normal form


def hnf(mat) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form.

    Returns (H, U) with H = U * mat, U unimodular.  Pivots are positive,
    entries above a pivot are reduced into [0, pivot), nonzero rows come
    first with strictly increasing pivot columns.
    """
    rows, cols = matrix_shape(mat)
    h = copy_matrix(mat)
    u = identity_matrix(rows)
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if h[i][c] != 0 and (pivot is None or abs(h[i][c]) < abs(h[pivot][c])):
                pivot = i
        if pivot is None:
            continue
        h[r], h[pivot] = h[pivot], h[r]
        u[r], u[pivot] = u[pivot], u[r]
        for i in range(r + 1, rows):
            if h[i][c] == 0:
                continue
            if h[i][c] % h[r][c] == 0:
                q = h[i][c] // h[r][c]
                h[i] = [p - q * t for p, t in zip(h[i], h[r])]
                u[i] = [p - q * t for p, t in zip(u[i], u[r])]
                continue
            g, x, y = xgcd(h[r][c], h[i][c])
            a, b = h[r][c] // g, h[i][c] // g
            h[r], h[i] = (
                [x * p + y * q for p, q in zip(h[r], h[i])],
                [-b * p + a * q for p, q in zip(h[r], h[i])],
            )
            u[r], u[i] = (
                [x * p + y * q for p, q in zip(u[r], u[i])],
                [-b * p + a * q for p, q in zip(u[r], u[i])],
            )
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [p - q * t for p, t in zip(h[i], h[r])]
                u[i] = [p - q * t for p, t in zip(u[i], u[r])]
        r += 1
        if r == rows:
            break
    return h, u


def hnf_rows(rows_in, cols: int | None = None) -> list[list[int]]:
    """Nonzero rows of the HNF of the given row set (canonical basis)."""
    rows = [list(r) for r in rows_in]
    if not rows:
        return []
    if cols is not None:
        for r in rows:
            if len(r) != cols:
                raise ShapeError("row length mismatch")
    h, _ = hnf(rows)
    return [row for row in h if any(row)]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SmithForm:
    """Decomposition U * M * V = diag(divisors) with unimodular U, V.

    ``vinv`` is the inverse of ``V``; the divisors satisfy d1 | d2 | ...
    and are positive.
    """

    divisors: tuple[int, ...]
    u: Matrix
    v: Matrix
    vinv: Matrix

    @property
    def rank(self) -> int:
        return len(self.divisors)


def snf(mat) -> SmithForm:
    rows, cols = matrix_shape(mat)
    a = copy_matrix(mat)
    u = identity_matrix(rows)
    v = identity_matrix(cols)
    vinv = identity_matrix(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def mix_rows(i, j, x, y, bg, ag):
        # (row_i, row_j) <- (x*row_i + y*row_j, -bg*row_i + ag*row_j)
        a[i], a[j] = (
            [x * p + y * q for p, q in zip(a[i], a[j])],
            [-bg * p + ag * q for p, q in zip(a[i], a[j])],
        )
        u[i], u[j] = (
            [x * p + y * q for p, q in zip(u[i], u[j])],
            [-bg * p + ag * q for p, q in zip(u[i], u[j])],
        )

    def mix_cols(i, j, x, y, bg, ag):
        # (col_i, col_j) <- (x*col_i + y*col_j, -bg*col_i + ag*col_j)
        for row in a:
            row[i], row[j] = x * row[i] + y * row[j], -bg * row[i] + ag * row[j]
        for row in v:
            row[i], row[j] = x * row[i] + y * row[j], -bg * row[i] + ag * row[j]
        # inverse of [[x, -bg], [y, ag]] is [[ag, bg], [-y, x]] (det 1)
        vinv[i], vinv[j] = (
            [ag * p + bg * q for p, q in zip(vinv[i], vinv[j])],
            [-y * p + x * q for p, q in zip(vinv[i], vinv[j])],
        )

    def clear_col(t):
        for i in range(t + 1, rows):
            if a[i][t]:
                if a[i][t] % a[t][t] == 0:
                    # plain elimination keeps the pivot row intact
                    q = a[i][t] // a[t][t]
                    a[i] = [p - q * s for p, s in zip(a[i], a[t])]
                    u[i] = [p - q * s for p, s in zip(u[i], u[t])]
                else:
                    g, x, y = xgcd(a[t][t], a[i][t])
                    mix_rows(t, i, x, y, a[i][t] // g, a[t][t] // g)

    def clear_row(t):
        for j in range(t + 1, cols):
            if a[t][j]:
                if a[t][j] % a[t][t] == 0:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                    vinv[t] = [p + q * s for p, s in zip(vinv[t], vinv[j])]
                else:
                    g, x, y = xgcd(a[t][t], a[t][j])
                    mix_cols(t, j, x, y, a[t][j] // g, a[t][t] // g)

    limit = min(rows, cols)
    t = 0
    while t < limit:
        pos = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                entry = a[i][j]
                if entry and (best is None or abs(entry) < best):
                    best = abs(entry)
                    pos = (i, j)
        if pos is None:
            break
        if pos[0] != t:
            swap_rows(t, pos[0])
        if pos[1] != t:
            swap_cols(t, pos[1])
        # alternate until both the row and column are clear; each re-dirtying
        # pass strictly shrinks |pivot|, so this terminates
        while True:
            clear_col(t)
            clear_row(t)
            if all(a[i][t] == 0 for i in range(t + 1, rows)):
                break
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain d1 | d2 | ... on the diagonal
    changed = True
    while changed:
        changed = False
        for i in range(t - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if dj % di:
                changed = True
                # row_i += row_{i+1}: block [[di, dj], [0, dj]]
                a[i] = [p + q for p, q in zip(a[i], a[i + 1])]
                u[i] = [p + q for p, q in zip(u[i], u[i + 1])]
                g, x, y = xgcd(di, dj)
                mix_cols(i, i + 1, x, y, dj // g, di // g)
                # block is now [[g, 0], [y*dj, di*dj/g]]; clear below
                q = a[i + 1][i] // a[i][i]
                a[i + 1] = [p - q * s for p, s in zip(a[i + 1], a[i])]
                u[i + 1] = [p - q * s for p, s in zip(u[i + 1], u[i])]
                if a[i + 1][i + 1] < 0:
                    negate_row(i + 1)

    divisors = [a[i][i] for i in range(limit) if a[i][i]]
    return SmithForm(tuple(divisors), u, v, vinv)


def invariant_factors(mat) -> tuple[int, ...]:
    return snf(mat).divisors


# ---------------------------------------------------------------------------
# sublattices


@dataclass(frozen=True)
class Sublattice:
    """A full-rank-basis sublattice of Z^ambient, basis rows in HNF."""

    ambient: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Matrix:
        return [list(row) for row in self.basis]

    def __repr__(self) -> str:
        return f"Sublattice(ambient={self.ambient}, rank={self.rank})"


def sublattice(ambient: int, rows) -> Sublattice:
    """Canonical sublattice spanned by the given rows (HNF, zero rows dropped)."""
    reduced = hnf_rows(rows, ambient if rows else None)
    for row in reduced:
        if len(row) != ambient:
            raise ShapeError("ambient dimension mismatch")
    return Sublattice(ambient, tuple(tuple(r) for r in reduced))


def full_lattice(ambient: int) -> Sublattice:
    return Sublattice(ambient, tuple(tuple(row) for row in identity_matrix(ambient)))


def zero_lattice(ambient: int) -> Sublattice:
    return Sublattice(ambient, ())


def kernel_lattice(mat, ambient: int | None = None) -> Sublattice:
    """Saturated integer kernel {v : M v = 0} as a sublattice of Z^cols.

    Computed from a unimodular row reduction of the transpose, so the
    result is automatically saturated.  ``ambient`` is only consulted for
    matrices with no rows, where the column count is unavailable.
    """
    if not mat:
        if ambient is None:
            raise ShapeError("ambient required for an empty operator")
        return full_lattice(ambient)
    rows, cols = matrix_shape(mat)
    if cols == 0:
        return zero_lattice(0)
    h, u = hnf(transpose(mat))
    kernel_rows = [u[i] for i in range(cols) if not any(h[i])]
    return sublattice(cols, kernel_rows)


def saturate(lat: Sublattice) -> Sublattice:
    """Z^N intersected with the rational span of ``lat``."""
    if lat.rank == 0:
        return lat
    perp = kernel_lattice(lat.basis_matrix())
    if perp.rank == 0:
        return full_lattice(lat.ambient)
    return kernel_lattice(perp.basis_matrix())


def intersect(l1: Sublattice, l2: Sublattice) -> Sublattice:
    if l1.ambient != l2.ambient:
        raise ShapeError("ambient dimension mismatch")
    if l1.rank == 0 or l2.rank == 0:
        return zero_lattice(l1.ambient)
    # solve x*B1 = y*B2 over Z; the intersection is spanned by the x*B1
    op = []
    b1t = transpose(l1.basis_matrix())
    b2t = transpose(l2.basis_matrix())
    for i in range(l1.ambient):
        op.append(b1t[i] + [-x for x in b2t[i]])
    ker = kernel_lattice(op)
    rows = []
    for vec in ker.basis:
        x = vec[: l1.rank]
        rows.append(matrix_vec(transpose(l1.basis_matrix()), list(x)))
    return sublattice(l1.ambient, rows)


def lattice_sum(l1: Sublattice, l2: Sublattice) -> Sublattice:
    if l1.ambient != l2.ambient:
        raise ShapeError("ambient dimension mismatch")
    return sublattice(l1.ambient, [list(r) for r in l1.basis + l2.basis])


def apply_matrix(mat, lat: Sublattice) -> Sublattice:
    """Image lattice M * L (not saturated)."""
    rows, cols = matrix_shape(mat)
    if cols != lat.ambient:
        raise ShapeError("operator does not match ambient dimension")
    image_rows = [matrix_vec(mat, list(b)) for b in lat.basis]
    return sublattice(rows, image_rows)


def coordinates_in(lat: Sublattice, vec) -> list[int] | None:
    """Integer coordinates of ``vec`` over the HNF basis, or None."""
    if len(vec) != lat.ambient:
        raise ShapeError("vector length mismatch")
    residue = list(vec)
    coords = []
    for row in lat.basis:
        pivot_col = next(j for j, x in enumerate(row) if x)
        q, rem = divmod(residue[pivot_col], row[pivot_col])
        if rem:
            return None
        coords.append(q)
        if q:
            residue = [p - q * t for p, t in zip(residue, row)]
    if any(residue):
        return None
    return coords


def contains_vector(lat: Sublattice, vec) -> bool:
    return coordinates_in(lat, vec) is not None


def is_sublattice(sub: Sublattice, sup: Sublattice) -> bool:
    if sub.ambient != sup.ambient:
        return False
    return all(contains_vector(sup, list(row)) for row in sub.basis)


def lattice_index(sub: Sublattice, sup: Sublattice) -> int:
    """The index [sup : sub], a positive integer.

    Raises InfiniteIndexError if the ranks differ and NotSublatticeError
    if ``sub`` is not contained in ``sup``.
    """
    if sub.ambient != sup.ambient:
        raise ShapeError("ambient dimension mismatch")
    if sub.rank != sup.rank:
        raise InfiniteIndexError(f"ranks differ: {sub.rank} vs {sup.rank}")
    coords = []
    for row in sub.basis:
        c = coordinates_in(sup, list(row))
        if c is None:
            raise NotSublatticeError("basis vector escapes the larger lattice")
        coords.append(c)
    if not coords:
        return 1
    result = 1
    for d in invariant_factors(coords):
        result *= d
    return result


def index_in_saturation(lat: Sublattice) -> int:
    return lattice_index(lat, saturate(lat))


# ---------------------------------------------------------------------------
# mod-2 fixed points


def gf2_nullity(rows_mod2: list[int], width: int) -> int:
    """Nullity over GF(2) of the matrix given as bitmask rows."""
    pivots = []
    for row in rows_mod2:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
    return width - len(pivots)


def fixed_two_torsion_count(matrices, rank: int | None = None) -> int:
    """Number of classes in (Z/2)^rank fixed by every matrix in the list.

    This counts the 2-torsion of the torus fixed by the induced action,
    i.e. 2 ** dim of the common mod-2 kernel of the (A - I).
    """
    mats = [copy_matrix(m) for m in matrices]
    if not mats:
        if rank is None:
            raise ShapeError("rank required when no matrices are given")
        return 1 << rank
    size = matrix_shape(mats[0])[0]
    for m in mats:
        r, c = matrix_shape(m)
        if r != c or r != size:
            raise ShapeError("matrices must be square of equal size")
    if rank is not None and rank != size:
        raise ShapeError("rank does not match matrix size")
    # rows of the stacked (A - I) mod 2, transposed into column-acting form:
    # v is fixed iff (A - I) v = 0 mod 2 for all A.
    bit_rows = []
    for m in mats:
        for i in range(size):
            bits = 0
            for j in range(size):
                entry = m[i][j] - (1 if i == j else 0)
                if entry & 1:
                    bits |= 1 << j
            if bits:
                bit_rows.append(bits)
    return 1 << gf2_nullity(bit_rows, size)
