"""Gaussian elimination over exact fields (Scalar entries)."""

from __future__ import annotations

from typing import Sequence

from .scalar import Field, Scalar

Row = tuple[Scalar, ...]


def rref(rows: Sequence[Sequence[Scalar]], field: Field, ncols: int) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][c].inv()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def rank(rows: Sequence[Sequence[Scalar]], field: Field, ncols: int) -> int:
    if not rows:
        return 0
    return len(rref(rows, field, ncols)[1])


def kernel(rows: Sequence[Sequence[Scalar]], field: Field, ncols: int) -> list[Row]:
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    reduced, pivots = rref(rows, field, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero()] * ncols
        v[f] = field.one()
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis
