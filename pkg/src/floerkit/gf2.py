"""Dense linear algebra over the two-element field.

Matrices are ``numpy.uint8`` arrays holding 0/1. Vectors that span a
subspace are stored as the rows of a 2-D array.
"""

from __future__ import annotations

from typing import Any

import numpy as np
import numpy.typing as npt

from floerkit.errors import F2DimensionError

F2Array = npt.NDArray[np.uint8]


def as_f2(matrix: Any, *, columns: int | None = None) -> F2Array:
    """Coerce ``matrix`` to a 2-D ``uint8`` array reduced mod 2.

    An empty input becomes a ``0 x columns`` array when ``columns`` is given.
    """
    arr = np.asarray(matrix)
    if arr.ndim == 2:
        return (arr.astype(np.int64) & 1).astype(np.uint8)
    if arr.size == 0:
        return zeros(0, columns or 0)
    raise F2DimensionError(f"expected a 2-D matrix, got shape {arr.shape}")


def zeros(rows: int, cols: int) -> F2Array:
    return np.zeros((rows, cols), dtype=np.uint8)


def rref(matrix: Any) -> tuple[F2Array, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = as_f2(matrix).copy()
    n_rows, n_cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        hits = np.flatnonzero(a[r:, c])
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p], :] = a[[p, r], :]
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others, :] ^= a[r, :]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(matrix: Any) -> int:
    a = as_f2(matrix)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    return len(rref(a)[1])


def nullspace(matrix: Any) -> F2Array:
    """Basis of ``{x : matrix @ x = 0}``, one vector per row."""
    a = as_f2(matrix)
    n_cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n_cols, dtype=np.uint8)
    reduced, pivots = rref(a)
    pivot_set = set(pivots)
    free = [c for c in range(n_cols) if c not in pivot_set]
    basis = zeros(len(free), n_cols)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, p in enumerate(pivots):
            basis[row, p] = reduced[i, f]
    return basis


def solve(matrix: Any, rhs: Any) -> F2Array | None:
    """One solution of ``matrix @ x = rhs``, or ``None`` when the system is inconsistent."""
    a = as_f2(matrix)
    b = np.asarray(rhs).reshape(-1)
    if b.shape[0] != a.shape[0]:
        raise F2DimensionError(f"right-hand side has length {b.shape[0]}, expected {a.shape[0]}")
    n_cols = a.shape[1]
    augmented = np.concatenate([a, (b.astype(np.int64) & 1).astype(np.uint8)[:, None]], axis=1)
    reduced, pivots = rref(augmented)
    if n_cols in pivots:
        return None
    x = np.zeros(n_cols, dtype=np.uint8)
    for i, p in enumerate(pivots):
        x[p] = reduced[i, n_cols]
    return x


def stack(*blocks: F2Array, columns: int) -> F2Array:
    """Stack row blocks that all have ``columns`` columns."""
    parts = [as_f2(b, columns=columns) for b in blocks]
    for part in parts:
        if part.shape[1] != columns:
            raise F2DimensionError(f"row block has {part.shape[1]} columns, expected {columns}")
    return np.concatenate(parts, axis=0) if parts else zeros(0, columns)


def in_span(vector: Any, rows: Any) -> bool:
    """Whether ``vector`` lies in the row span of ``rows``."""
    v = as_f2(np.asarray(vector).reshape(1, -1))
    basis = as_f2(rows, columns=v.shape[1])
    if basis.shape[1] != v.shape[1]:
        raise F2DimensionError("vector and span have different lengths")
    return rank(np.concatenate([basis, v])) == rank(basis)


def combine(coefficients: Any, rows: Any) -> F2Array:
    """Linear combinations ``coefficients @ rows`` over F2."""
    c = np.atleast_2d(np.asarray(coefficients)).astype(np.int64)
    r = np.asarray(rows).astype(np.int64)
    if c.shape[1] != r.shape[0]:
        raise F2DimensionError(f"cannot combine {c.shape[1]} coefficients with {r.shape[0]} rows")
    return ((c @ r) & 1).astype(np.uint8)


def relations(vectors: Any, span: Any, *, columns: int) -> F2Array:
    """Basis of the coefficients ``lam`` with ``lam @ vectors`` in the row span of ``span``."""
    v = as_f2(vectors, columns=columns)
    s = as_f2(span, columns=columns)
    kernel = nullspace(np.concatenate([v, s], axis=0).T)
    projected = kernel[:, : v.shape[0]]
    reduced, pivots = rref(projected)
    return reduced[: len(pivots)]
