"""Small exact linear algebra kernel over Fraction.

Just enough for the group-algebra projections: a reusable row-reduction
solver for (possibly singular, consistent) symmetric systems, and an exact
positive-semidefiniteness test by symmetric elimination.
"""
from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


class FractionSolver:
    """Row-reduce a matrix once, then solve many right-hand sides.

    Solutions set all free variables to zero, which fixes a deterministic
    representative when the matrix is singular.  Inconsistent systems raise
    ValueError.
    """

    def __init__(self, matrix: Matrix):
        rows = len(matrix)
        cols = len(matrix[0]) if rows else 0
        reduced = [[Fraction(v) for v in row] for row in matrix]
        # Transform starts as the identity and tracks all row operations.
        transform = [
            [Fraction(1) if i == j else Fraction(0) for j in range(rows)]
            for i in range(rows)
        ]
        pivots: list[tuple[int, int]] = []
        r = 0
        for c in range(cols):
            pivot = next((i for i in range(r, rows) if reduced[i][c] != 0), None)
            if pivot is None:
                continue
            reduced[r], reduced[pivot] = reduced[pivot], reduced[r]
            transform[r], transform[pivot] = transform[pivot], transform[r]
            inv = 1 / reduced[r][c]
            reduced[r] = [v * inv for v in reduced[r]]
            transform[r] = [v * inv for v in transform[r]]
            for i in range(rows):
                if i != r and reduced[i][c] != 0:
                    f = reduced[i][c]
                    reduced[i] = [a - f * b for a, b in zip(reduced[i], reduced[r])]
                    transform[i] = [a - f * b for a, b in zip(transform[i], transform[r])]
            pivots.append((r, c))
            r += 1
            if r == rows:
                break
        self.rows = rows
        self.cols = cols
        self.reduced = reduced
        self.transform = transform
        self.pivots = pivots
        self.rank = r

    def solve(self, rhs: list[Fraction]) -> list[Fraction]:
        if len(rhs) != self.rows:
            raise ValueError(f"rhs length {len(rhs)} != {self.rows}")
        folded = [
            sum((t * b for t, b in zip(row, rhs)), Fraction(0))
            for row in self.transform
        ]
        for i in range(self.rank, self.rows):
            if folded[i] != 0:
                raise ValueError("inconsistent linear system")
        solution = [Fraction(0)] * self.cols
        for r, c in reversed(self.pivots):
            value = folded[r]
            for j in range(c + 1, self.cols):
                if self.reduced[r][j] != 0:
                    value -= self.reduced[r][j] * solution[j]
            solution[c] = value
        return solution


def is_positive_semidefinite(matrix: Matrix) -> bool:
    """Exact PSD test for a symmetric rational matrix, by elimination."""
    n = len(matrix)
    work = [[Fraction(v) for v in row] for row in matrix]
    active = list(range(n))
    while active:
        pivot = None
        for i in active:
            if work[i][i] < 0:
                return False
            if work[i][i] > 0:
                pivot = i
                break
        if pivot is None:
            # All active diagonal entries vanish; PSD forces the rows to vanish.
            return all(work[i][j] == 0 for i in active for j in active)
        active.remove(pivot)
        d = work[pivot][pivot]
        for i in active:
            f = work[i][pivot] / d
            if f != 0:
                for j in active:
                    work[i][j] -= f * work[pivot][j]
    return True
