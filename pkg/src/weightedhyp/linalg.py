"""Exact integer linear algebra on small matrices.

Everything here works on tuples of ints.  Matrices stay tiny (at most
s+1 rows by s+2 columns with s <= 6), so tuple-based gcd elimination
beats any general-purpose matrix library by a wide margin, and there is
no floating point anywhere.
"""

from __future__ import annotations


class DegenerateRowError(ValueError):
    """Raised when a row has no positive entry among the weight columns."""


def _hnf_inplace(mat: list[list[int]], transform: list[list[int]] | None) -> int:
    """Reduce mat to row Hermite form in place, returning the rank.

    Convention: pivots positive, zeros below each pivot, entries above a
    pivot reduced into [0, pivot).  Row operations are mirrored on
    transform when given.
    """
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    rank = 0
    pivot_cols: list[int] = []
    for col in range(ncols):
        if rank == nrows:
            break
        sel = None
        for i in range(rank, nrows):
            if mat[i][col]:
                sel = i
                break
        if sel is None:
            continue
        if sel != rank:
            mat[rank], mat[sel] = mat[sel], mat[rank]
            if transform is not None:
                transform[rank], transform[sel] = transform[sel], transform[rank]
        for i in range(rank + 1, nrows):
            # Euclid on the column entries; rows swap roles as remainders shrink.
            while mat[i][col]:
                q = mat[rank][col] // mat[i][col]
                if q:
                    mat[rank] = [x - q * y for x, y in zip(mat[rank], mat[i])]
                    if transform is not None:
                        transform[rank] = [
                            x - q * y for x, y in zip(transform[rank], transform[i])
                        ]
                mat[rank], mat[i] = mat[i], mat[rank]
                if transform is not None:
                    transform[rank], transform[i] = transform[i], transform[rank]
        if mat[rank][col] < 0:
            mat[rank] = [-x for x in mat[rank]]
            if transform is not None:
                transform[rank] = [-x for x in transform[rank]]
        pivot_cols.append(col)
        rank += 1
    # Reduce entries above each pivot into [0, pivot).
    for r, col in enumerate(pivot_cols):
        p = mat[r][col]
        for i in range(r):
            q = mat[i][col] // p
            if q:
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[r])]
                if transform is not None:
                    transform[i] = [
                        x - q * y for x, y in zip(transform[i], transform[r])
                    ]
    return rank


def echelon(rows) -> tuple[tuple[int, ...], ...]:
    """Row Hermite form of the given rows, zero rows dropped."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    rank = _hnf_inplace(mat, None)
    return tuple(tuple(r) for r in mat[:rank])


def hnf_with_transform(rows) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """(H, T) with T unimodular, T @ rows == H, H in row Hermite form.

    Zero rows of H are kept so that T stays square; the caller reads the
    rank off the nonzero rows.
    """
    mat = [list(r) for r in rows]
    n = len(mat)
    transform = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if mat:
        _hnf_inplace(mat, transform)
    return tuple(tuple(r) for r in mat), tuple(tuple(r) for r in transform)


def solve_diophantine(
    a_rows, rhs
) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]] | None:
    """Solve A x = rhs over the integers.

    Returns (particular solution x0, kernel basis) or None when there is
    no integral solution.  The kernel basis is saturated: it spans the
    full integer kernel of A.
    """
    a_rows = [tuple(r) for r in a_rows]
    nrows = len(a_rows)
    ncols = len(a_rows[0]) if nrows else 0
    rhs = tuple(rhs)
    if nrows == 0:
        basis = tuple(
            tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)
        )
        return (0,) * ncols, basis
    # Row-reduce the transpose: H = T * A^T, so A = H^T * (T^{-1})^T and
    # with x = T^T y the system becomes H^T y = rhs.
    h, t = hnf_with_transform(tuple(zip(*a_rows)))
    pivots: list[tuple[int, int]] = []  # (row of H, pivot column)
    for i, row in enumerate(h):
        col = next((j for j, v in enumerate(row) if v), None)
        if col is None:
            break
        pivots.append((i, col))
    rank = len(pivots)
    y = [0] * ncols
    for i, col in pivots:
        acc = rhs[col]
        for j in range(i):
            acc -= h[j][col] * y[j]
        piv = h[i][col]
        if acc % piv:
            return None
        y[i] = acc // piv
    # Consistency on the non-pivot coordinates.
    for col in range(nrows):
        acc = sum(h[j][col] * y[j] for j in range(rank))
        if acc != rhs[col]:
            return None
    x0 = tuple(
        sum(y[j] * t[j][i] for j in range(rank)) for i in range(ncols)
    )
    kernel = tuple(t[j] for j in range(rank, ncols))
    return x0, kernel


def kernel_basis(a_rows, ncols: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Saturated integer kernel of A (rows may be empty)."""
    a_rows = [tuple(r) for r in a_rows]
    if not a_rows:
        if ncols is None:
            raise ValueError("ncols required for an empty system")
        return tuple(
            tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)
        )
    sol = solve_diophantine(a_rows, (0,) * len(a_rows))
    assert sol is not None
    return sol[1]


def last_row_shape(matrix) -> tuple[int, tuple[int, ...], int, int]:
    """Decompose the last row of an echelon matrix as (i, p, c, b).

    The row is (0, ..., 0, p_i, ..., p_s, -c, b) over the s weight
    columns plus the degree and constant columns; i is 1-based.  Raises
    DegenerateRowError when no weight entry is positive, which signals
    that this branch cannot be expanded further.
    """
    row = matrix[-1]
    s = len(row) - 2
    for idx in range(s):
        if row[idx] > 0:
            return idx + 1, tuple(row[idx:s]), -row[s], row[s + 1]
        if row[idx] < 0:
            # Hermite pivots are positive, so a leading negative entry can
            # only appear on a malformed input.
            raise DegenerateRowError(f"leading weight entry negative in {row}")
    raise DegenerateRowError(f"no positive weight entry in {row}")
