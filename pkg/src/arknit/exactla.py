"""Exact linear algebra over the rationals.

Matrices are ``flint.fmpq_mat`` values and scalars are ``flint.fmpq``.
Every basis produced here is derived from the reduced row echelon form,
so results are reproducible and kernel coordinates can be read off
directly at the free columns.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

import flint

Mat = flint.fmpq_mat
Scalar = flint.fmpq

__all__ = [
    "Mat",
    "Scalar",
    "scalar",
    "matrix",
    "zeros",
    "identity",
    "column",
    "hstack",
    "vstack",
    "block_diag",
    "rref",
    "rank",
    "kernel_basis",
    "kernel_matrix",
    "solve",
    "cokernel_data",
    "cokernel_section",
    "column_space",
    "complement_columns",
    "is_zero",
    "flatten",
    "trace",
    "left_inverse",
    "submatrix",
    "columns",
]


def scalar(x) -> Scalar:
    """Coerce an int, Fraction, string or fmpq to an exact rational."""
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, flint.fmpz):
        return flint.fmpq(x)
    if isinstance(x, str):
        f = Fraction(x)
        return flint.fmpq(f.numerator, f.denominator)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def matrix(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Mat:
    """Build a matrix from a list of rows."""
    rows = list(rows)
    r = len(rows)
    c = ncols if ncols is not None else (len(rows[0]) if r else 0)
    entries = []
    for row in rows:
        if len(row) != c:
            raise ValueError("ragged rows")
        entries.extend(row)
    try:
        return Mat(r, c, entries)
    except (TypeError, ValueError):
        return Mat(r, c, [scalar(x) for x in entries])


def zeros(r: int, c: int) -> Mat:
    return Mat(r, c)


def identity(n: int) -> Mat:
    m = Mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def column(values: Iterable) -> Mat:
    vals = [scalar(x) for x in values]
    return Mat(len(vals), 1, vals)


def _entries(m: Mat) -> list:
    return m.entries() if m.nrows() and m.ncols() else []


def hstack(mats: Sequence[Mat], nrows: Optional[int] = None) -> Mat:
    """Concatenate matrices side by side."""
    mats = list(mats)
    if not mats:
        return Mat(nrows or 0, 0)
    r = mats[0].nrows()
    for m in mats:
        if m.nrows() != r:
            raise ValueError("row count mismatch in hstack")
    return vstack([m.transpose() for m in mats]).transpose()


def vstack(mats: Sequence[Mat], ncols: Optional[int] = None) -> Mat:
    """Concatenate matrices on top of each other."""
    mats = list(mats)
    if not mats:
        return Mat(0, ncols or 0)
    c = mats[0].ncols()
    entries = []
    r = 0
    for m in mats:
        if m.ncols() != c:
            raise ValueError("column count mismatch in vstack")
        entries.extend(_entries(m))
        r += m.nrows()
    return Mat(r, c, entries) if r and c else Mat(r, c)


def block_diag(mats: Sequence[Mat]) -> Mat:
    mats = list(mats)
    c = sum(m.ncols() for m in mats)
    rows = []
    co = 0
    for m in mats:
        parts = [Mat(m.nrows(), co), m, Mat(m.nrows(), c - co - m.ncols())]
        rows.append(hstack(parts))
        co += m.ncols()
    return vstack(rows, ncols=c)


def _paste(out: Mat, m: Mat, r0: int, c0: int) -> None:
    nc = m.ncols()
    for k, x in enumerate(_entries(m)):
        if x != 0:
            out[r0 + k // nc, c0 + k % nc] = x


def rref(m: Mat) -> tuple[Mat, list[int], int]:
    """Reduced row echelon form, pivot columns and rank."""
    if m.nrows() == 0 or m.ncols() == 0:
        return Mat(m.nrows(), m.ncols()), [], 0
    r, rk = m.rref()
    pivots = []
    j = 0
    for i in range(rk):
        while r[i, j] == 0:
            j += 1
        pivots.append(j)
        j += 1
    return r, pivots, rk


def rank(m: Mat) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rank()


def kernel_matrix(m: Mat) -> tuple[Mat, list[int]]:
    """Kernel basis as the columns of a matrix, plus the free column indices.

    The basis vector attached to free column j has a 1 at j and zeros at the
    other free columns, so the coordinates of a kernel vector are its
    entries at the free columns.
    """
    n = m.ncols()
    r, pivots, rk = rref(m)
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    k = Mat(n, len(free))
    for col, j in enumerate(free):
        k[j, col] = 1
        for i, p in enumerate(pivots):
            x = r[i, j]
            if x != 0:
                k[p, col] = -x
    return k, free


def kernel_basis(m: Mat) -> list[Mat]:
    """Basis of the null space of m as a list of column vectors."""
    k, free = kernel_matrix(m)
    return [_col(k, j) for j in range(len(free))]


def _col(m: Mat, j: int) -> Mat:
    return submatrix(m, range(m.nrows()), [j])


def solve(m: Mat, b: Mat) -> Optional[Mat]:
    """Some x with m*x = b, or None when the system is inconsistent.

    b may have several columns; the free variables are set to zero.
    """
    if b.nrows() != m.nrows():
        raise ValueError("right-hand side has the wrong number of rows")
    n = m.ncols()
    nb = b.ncols()
    if m.nrows() == 0:
        return Mat(n, nb)
    aug = hstack([m, b])
    r, pivots, rk = rref(aug)
    if pivots and pivots[-1] >= n:
        return None
    x = Mat(n, nb)
    for i, p in enumerate(pivots):
        for j in range(nb):
            x[p, j] = r[i, n + j]
    return x


def cokernel_section(m: Mat) -> tuple[Mat, Mat]:
    """Projection q onto a complement of the column space, and a section s.

    q has shape d x rows with q*m = 0 and s has shape rows x d with q*s = 1.
    The complement is spanned by standard basis vectors, chosen greedily in
    index order.
    """
    k, free = kernel_matrix(m.transpose())
    q = k.transpose()
    rows = m.nrows()
    s = Mat(rows, len(free))
    for col, j in enumerate(free):
        s[j, col] = 1
    return q, s


def cokernel_data(m: Mat) -> tuple[Mat, int]:
    """Projection onto a chosen complement of the column space and its dimension."""
    q, _ = cokernel_section(m)
    return q, q.nrows()


def column_space(m: Mat) -> Mat:
    """Independent columns of m spanning its column space (pivot columns)."""
    _, pivots, _ = rref(m)
    return submatrix(m, range(m.nrows()), pivots)


def complement_columns(m: Mat) -> list[int]:
    """Indices of standard basis vectors completing the columns of m to a basis."""
    n = m.nrows()
    aug = hstack([m, identity(n)])
    _, pivots, _ = rref(aug)
    return [p - m.ncols() for p in pivots if p >= m.ncols()]


def is_zero(m: Mat) -> bool:
    return m == Mat(m.nrows(), m.ncols())


def flatten(m: Mat) -> list:
    return m.entries() if m.nrows() and m.ncols() else []


def trace(m: Mat) -> Scalar:
    t = flint.fmpq(0)
    for i in range(min(m.nrows(), m.ncols())):
        t += m[i, i]
    return t


def left_inverse(u: Mat) -> Mat:
    """A matrix l with l*u = 1 for u of full column rank."""
    n, k = u.nrows(), u.ncols()
    if k == 0:
        return Mat(0, n)
    _, rows, rk = rref(u.transpose())
    if rk != k:
        raise ValueError("matrix does not have full column rank")
    sq = Mat(k, k, [u[r, j] for r in rows for j in range(k)])
    inv = sq.inv()
    out = Mat(k, n)
    for j, r in enumerate(rows):
        for i in range(k):
            out[i, r] = inv[i, j]
    return out


def submatrix(m: Mat, rows: Sequence[int], cols: Sequence[int]) -> Mat:
    rows, cols = list(rows), list(cols)
    if not rows or not cols:
        return Mat(len(rows), len(cols))
    ents = m.entries()
    nc = m.ncols()
    return Mat(len(rows), len(cols), [ents[r * nc + c] for r in rows for c in cols])


def columns(m: Mat, cols: Sequence[int]) -> Mat:
    return submatrix(m, range(m.nrows()), cols)
