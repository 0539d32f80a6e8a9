"""Exact rank computation over the rationals (tiny matrices only)."""

from __future__ import annotations

from fractions import Fraction


def rational_rank(rows) -> int:
    """Rank of a matrix given as an iterable of rows of ints/Fractions."""
    matrix = [[Fraction(v) for v in row] for row in rows]
    if not matrix:
        return 0
    ncols = len(matrix[0])
    rank = 0
    col = 0
    while rank < len(matrix) and col < ncols:
        pivot = next(
            (r for r in range(rank, len(matrix)) if matrix[r][col] != 0), None
        )
        if pivot is None:
            col += 1
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        prow = matrix[rank]
        inv = 1 / prow[col]
        for r in range(rank + 1, len(matrix)):
            factor = matrix[r][col] * inv
            if factor:
                row = matrix[r]
                for c in range(col, ncols):
                    row[c] -= factor * prow[c]
        rank += 1
        col += 1
    return rank
