"""Exact two-phase simplex over the rationals (Bland's rule).

Solves ``max c.x  s.t.  A x = b, x >= 0`` with :class:`fractions.Fraction`
arithmetic throughout.  Small dense tableaux only; no attempt at sparsity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None = None
    value: Fraction | None = None


def _pivot(T, basis, r, c):
    row = T[r]
    piv = row[c]
    if piv != 1:
        T[r] = row = [v / piv for v in row]
    for k, other in enumerate(T):
        if k != r and other[c] != 0:
            m = other[c]
            T[k] = [a - m * b for a, b in zip(other, row)]
    basis[r] = c


def _run(T, basis, obj_row, allowed):
    """Maximise the objective stored (negated) in ``T[obj_row]``."""
    m = len(T) - 2  # two objective rows at the bottom
    width = len(T[0]) - 1
    while True:
        cost = T[obj_row]
        enter = next((j for j in range(width) if allowed[j] and cost[j] < 0), None)
        if enter is None:
            return OPTIMAL
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best[1], enter)


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    m, n = len(A), len(c)
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # columns: x (n), artificials (m), rhs
    T = [A[i] + [Fraction(int(k == i)) for k in range(m)] + [b[i]] for i in range(m)]
    phase2 = [Fraction(-v) for v in c] + [Fraction(0)] * m + [Fraction(0)]
    phase1 = [Fraction(0)] * (n + m) + [Fraction(0)]
    for i in range(m):
        for j in range(n):
            phase1[j] -= T[i][j]
        phase1[-1] -= T[i][-1]
    T.append(phase2)
    T.append(phase1)
    basis = [n + i for i in range(m)]
    _run(T, basis, m + 1, [True] * n + [False] * m)
    if T[m + 1][-1] != 0:
        return LPResult(INFEASIBLE)
    # drive zero-level artificials out of the basis, dropping redundant rows
    r = 0
    while r < len(basis):
        if basis[r] >= n:
            col = next((j for j in range(n) if T[r][j] != 0), None)
            if col is None:
                del T[r]
                del basis[r]
                continue
            _pivot(T, basis, r, col)
        r += 1
    m = len(basis)
    status = _run(T, basis, m, [True] * n + [False] * (len(T[0]) - 1 - n))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return LPResult(OPTIMAL, x, sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0)))
