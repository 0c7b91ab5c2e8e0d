"""Exact linear solves over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import SingularSystem


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Solve ``a @ x = b`` exactly; ``b`` may carry several right-hand sides.

    Gauss-Jordan elimination on :class:`~fractions.Fraction` entries, pivoting
    on the first nonzero entry of each column.
    """
    n = len(a)
    if n == 0:
        return []
    k = len(b[0])
    m = [list(map(Fraction, a[i])) + list(map(Fraction, b[i])) for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise SingularSystem(f"no pivot in column {col}")
        m[col], m[pivot] = m[pivot], m[col]
        row = m[col]
        inv = 1 / row[col]
        if inv != 1:
            row[col:] = [v * inv for v in row[col:]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                other = m[r]
                for c in range(col, n + k):
                    if row[c]:
                        other[c] -= f * row[c]
    return [m[i][n:] for i in range(n)]


def solve_vector(a, b: Sequence[Fraction]) -> list[Fraction]:
    return [row[0] for row in solve(a, [[v] for v in b])]
