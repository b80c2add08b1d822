"""Exact linear programming over the rationals.

Solves ``max c.x  s.t.  A x <= b`` for free ``x`` with few variables and
many constraints by running a two-phase simplex (Bland's rule) on the dual
``min b.y  s.t.  A^T y = c, y >= 0``; the tableau then has one row per
variable instead of one per constraint. The primal optimum is read off the
final basis: the tight constraints ``A_B x = b_B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from .core import Q, Scalar

__all__ = ["LPResult", "maximize", "solve_square", "null_vector", "rank"]

Matrix = List[List[Scalar]]


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    x: Optional[tuple] = None
    value: Optional[Scalar] = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def _row_reduce(rows: Matrix) -> tuple:
    """Reduced row echelon form in place; returns the pivot columns."""
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return tuple(pivots)


def rank(vectors: Sequence[Sequence[Scalar]]) -> int:
    if not vectors:
        return 0
    return len(_row_reduce([[Q(v) for v in row] for row in vectors]))


def null_vector(vectors: Sequence[Sequence[Scalar]], dim: int) -> Optional[tuple]:
    """A nonzero ``v`` with ``<row, v> = 0`` for every row, or None if the rows span."""
    if not vectors:
        return tuple(Q(int(i == 0)) for i in range(dim))
    rows = [[Q(v) for v in row] for row in vectors]
    pivots = _row_reduce(rows)
    free = [c for c in range(dim) if c not in pivots]
    if not free:
        return None
    f = free[0]
    v = [Q(0)] * dim
    v[f] = Q(1)
    for i, pc in enumerate(pivots):
        v[pc] = -rows[i][f]
    return tuple(v)


def solve_square(a: Matrix, b: Sequence[Scalar]) -> tuple:
    """Solve a nonsingular square system exactly."""
    n = len(a)
    aug = [[Q(v) for v in row] + [Q(rhs)] for row, rhs in zip(a, b)]
    pivots = _row_reduce(aug)
    if pivots != tuple(range(n)):
        raise ValueError("singular system")
    return tuple(aug[i][n] for i in range(n))


class _Tableau:
    """Equality-form tableau ``M y = rhs``, ``y >= 0``, with an explicit basis."""

    def __init__(self, rows: Matrix, rhs: List[Scalar], basis: List[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, c: int) -> None:
        inv = 1 / self.rows[r][c]
        self.rows[r] = [v * inv for v in self.rows[r]]
        self.rhs[r] *= inv
        pr, prhs = self.rows[r], self.rhs[r]
        for i, row in enumerate(self.rows):
            f = row[c]
            if i != r and f != 0:
                self.rows[i] = [a - f * b for a, b in zip(row, pr)]
                self.rhs[i] -= f * prhs
        self.basis[r] = c

    def minimize(self, cost: Sequence[Scalar], allowed: Sequence[int]) -> bool:
        """Simplex with Bland's rule over ``allowed`` columns; False if unbounded."""
        allowed = sorted(allowed)
        while True:
            cb = [cost[j] for j in self.basis]
            entering = None
            for j in allowed:
                if j in self.basis:
                    continue
                reduced = cost[j] - sum((cb[i] * self.rows[i][j] for i in range(len(cb)) if cb[i]), Q(0))
                if reduced < 0:
                    entering = j
                    break
            if entering is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = self.rhs[i] / row[entering]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering)


def _solve_dual(a: Matrix, b: Sequence[Scalar], c: Sequence[Scalar]) -> LPResult:
    m, d = len(a), len(c)
    # rows: for each variable i, sum_j a[j][i] y_j + art_i = c_i
    rows, rhs = [], []
    for i in range(d):
        sign = -1 if c[i] < 0 else 1
        rows.append([sign * a[j][i] for j in range(m)] + [Q(int(k == i)) for k in range(d)])
        rhs.append(sign * c[i])
    tab = _Tableau(rows, rhs, [m + i for i in range(d)])
    phase1 = [Q(0)] * m + [Q(1)] * d
    tab.minimize(phase1, range(m + d))
    if sum(tab.rhs[i] for i in range(d) if tab.basis[i] >= m) > 0:
        return LPResult("dual_infeasible")
    for r in range(d):
        if tab.basis[r] >= m:
            col = next((j for j in range(m) if tab.rows[r][j] != 0 and j not in tab.basis), None)
            if col is None:
                raise ValueError("constraint matrix must have full column rank")
            tab.pivot(r, col)
    cost = list(b) + [Q(0)] * d
    if not tab.minimize(cost, range(m)):
        return LPResult("infeasible")
    x = solve_square([list(a[j]) for j in tab.basis], [b[j] for j in tab.basis])
    return LPResult("optimal", x, sum((ci * xi for ci, xi in zip(c, x)), Q(0)))


def maximize(c: Sequence, a: Sequence[Sequence], b: Sequence) -> LPResult:
    """Maximise ``c.x`` over ``{x : A x <= b}`` exactly.

    ``A`` must have full column rank. The status is ``"optimal"`` (with the
    optimal vertex ``x`` and ``value``), ``"unbounded"`` or ``"infeasible"``.
    """
    c = [Q(v) for v in c]
    a = [[Q(v) for v in row] for row in a]
    b = [Q(v) for v in b]
    if any(len(row) != len(c) for row in a):
        raise ValueError("constraint rows must match the objective length")
    if rank(a) < len(c):
        raise ValueError("constraint matrix must have full column rank")
    result = _solve_dual(a, b, c)
    if result.status != "dual_infeasible":
        return result
    # dual infeasible: primal is unbounded if feasible at all
    probe = _solve_dual(a, b, [Q(0)] * len(c))
    return LPResult("unbounded" if probe.optimal else "infeasible")
