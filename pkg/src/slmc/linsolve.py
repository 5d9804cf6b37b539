"""Exact linear solving over the rationals by Gaussian elimination."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def solve_linear(
    rows: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
    n_vars: int,
) -> list[Fraction] | None:
    """Solve A x = b exactly; returns one solution or None if inconsistent.

    Free variables are set to zero, so the returned solution is the sparsest
    of the echelon family rather than a parametrization.
    """
    m = len(rows)
    if len(rhs) != m:
        raise ValueError("row/rhs length mismatch")
    aug = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for row in aug:
        if len(row) != n_vars + 1:
            raise ValueError("row width mismatch")

    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n_vars):
        pivot = None
        for i in range(r, m):
            if aug[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = Fraction(1) / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break

    for i in range(r, m):
        if aug[i][n_vars]:
            return None

    x = [Fraction(0)] * n_vars
    for row, col in pivots:
        x[col] = aug[row][n_vars]
    return x
