"""Geometric filters: positive angle solutions and edge-length classes.

Angles are measured in units of a full turn, so every vertex row reads
``sum_i c_i x_i = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .convert import VertexSet
from .diagram import Diagram
from .lp import INFEASIBLE, UNBOUNDED, maximize


@dataclass(frozen=True)
class AngleSystem:
    n: int
    rows: tuple[tuple[int, ...], ...]

    def residuals(self, x: Sequence[Fraction]) -> list[Fraction]:
        return [sum((c * xi for c, xi in zip(row, x)), Fraction(0)) - 1 for row in self.rows]


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    witness: tuple[Fraction, ...] | None = None
    margin: Fraction | None = None  # the optimal least angle

    def witness_strings(self) -> list[str]:
        return [str(x) for x in self.witness] if self.witness else []


def build_angle_system(v: VertexSet) -> AngleSystem:
    rows = []
    for vert in v.vertices:
        row = [0] * v.n
        for c in vert:
            row[c.label] += 1
        rows.append(tuple(row))
    return AngleSystem(v.n, tuple(rows))


def check_positive_solution(system: AngleSystem) -> FeasibilityVerdict:
    """Decide whether the rows admit a solution with every angle positive.

    Writes ``x = y + t`` with ``y >= 0`` and ``t = t1 - t2`` and maximises the
    common lower bound ``t``; the system is feasible iff the optimum is > 0.
    """
    n = system.n
    rows = sorted(set(system.rows))
    if not rows:
        w = tuple(Fraction(1) for _ in range(n))
        return FeasibilityVerdict(True, w, None)
    A = [list(r) + [sum(r), -sum(r)] for r in rows]
    c = [0] * n + [1, -1]
    res = maximize(c, A, [1] * len(rows))
    if res.status == INFEASIBLE:
        return FeasibilityVerdict(False)
    if res.status == UNBOUNDED:  # pragma: no cover - rows have positive sums
        raise AssertionError("angle LP cannot be unbounded")
    t = res.x[n] - res.x[n + 1]
    if t <= 0:
        return FeasibilityVerdict(False, None, t)
    w = tuple(res.x[i] + t for i in range(n))
    assert all(r == 0 for r in system.residuals(w))
    return FeasibilityVerdict(True, w, t)


def angle_feasible(v: VertexSet) -> FeasibilityVerdict:
    return check_positive_solution(build_angle_system(v))


@dataclass(frozen=True)
class EdgeClassPartition:
    n: int
    classes: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return sorted(len(c) for c in self.classes)


def edge_class_partition(n: int, pairs: Sequence[tuple[int, int]]) -> EdgeClassPartition:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return EdgeClassPartition(n, tuple(sorted(tuple(g) for g in groups.values())))


def edge_classes(d: Diagram) -> EdgeClassPartition:
    """Labels forced to share a length: paired edges have equal length and all
    tiles are congruent, so length depends only on the label."""
    return edge_class_partition(d.n, [(p.a.label, p.b.label) for p in d.pairs])
