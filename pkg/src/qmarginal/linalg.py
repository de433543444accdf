"""Small exact linear algebra helpers over the rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Row = list[Fraction]


def row_reduce(matrix: Sequence[Sequence[Fraction]]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form; returns (rref rows, pivot column indices)."""
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    return len(row_reduce(matrix)[1])


def nullspace(matrix: Sequence[Sequence[Fraction]], ncols: int) -> list[Row]:
    """Basis of the kernel of the matrix (acting on column vectors)."""
    if not matrix:
        return [[Fraction(1 if i == j else 0) for i in range(ncols)]
                for j in range(ncols)]
    rref, pivots = row_reduce(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -rref[r][f]
        basis.append(vec)
    return basis


def primitive_integer(vec: Sequence[Fraction]) -> list[int]:
    """Scale a nonzero rational vector to primitive integers, sign preserved."""
    dens = [Fraction(v).denominator for v in vec]
    lcm = math.lcm(*dens) if dens else 1
    ints = [int(Fraction(v) * lcm) for v in vec]
    g = math.gcd(*ints)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return [v // g for v in ints]
