import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from surftile.convert import diagram_to_vertexset
from surftile.diagram import diagram
from surftile.geomfilter import (
    AngleSystem, build_angle_system, check_positive_solution, edge_class_partition, edge_classes,
)
from surftile.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, maximize
from worked import BOXED, FIVE_CLASS_PAIRS, MIXED, random_valid, split_diagram


def test_lp_small_cases():
    # max x + y, x + 2y = 4, 3x + y = 7 -> (2, 1)
    r = maximize([1, 1], [[1, 2], [3, 1]], [4, 7])
    assert r.status == OPTIMAL and r.x == [2, 1] and r.value == 3
    assert maximize([1], [[1], [1]], [1, 2]).status == INFEASIBLE
    assert maximize([1, 0], [[1, -1]], [0]).status == UNBOUNDED
    # redundant equality rows
    r = maximize([0, 1], [[1, 1], [2, 2]], [1, 2])
    assert r.status == OPTIMAL and r.x == [0, 1]


def test_rows_for_split_example():
    rows = sorted(build_angle_system(diagram_to_vertexset(split_diagram(FIVE_CLASS_PAIRS, 2))).rows)
    assert rows == sorted([(2, 0, 0, 2, 2, 0, 0), (0, 2, 2, 0, 0, 0, 0), (0, 0, 0, 0, 0, 2, 2)])


def test_boxed_is_infeasible():
    sys_ = build_angle_system(diagram_to_vertexset(BOXED))
    assert sorted(sys_.rows) == sorted([(2, 1, 1, 1, 1, 1, 1), (0, 1, 1, 1, 0, 0, 0), (0, 0, 0, 0, 1, 1, 1)])
    v = check_positive_solution(sys_)
    assert not v.feasible and v.witness is None
    assert v.margin == Fraction(-1, 2)


def test_split_example_witness():
    sys_ = build_angle_system(diagram_to_vertexset(split_diagram(FIVE_CLASS_PAIRS, 2)))
    v = check_positive_solution(sys_)
    assert v.feasible
    assert all(x > 0 for x in v.witness)
    assert all(r == 0 for r in sys_.residuals(v.witness))
    x = [Fraction(1, 6), Fraction(1, 4), Fraction(1, 4), Fraction(1, 6), Fraction(1, 6),
         Fraction(1, 4), Fraction(1, 4)]
    assert all(r == 0 for r in sys_.residuals(x))


def test_single_uniform_row():
    v = check_positive_solution(AngleSystem(7, ((1,) * 7,)))
    assert v.feasible and v.witness == (Fraction(1, 7),) * 7


def test_lp_agrees_with_floating_point():
    rng = random.Random(11)
    for _ in range(150):
        d = random_valid(rng, rng.choice((7, 8, 9)), 2)
        sys_ = build_angle_system(diagram_to_vertexset(d))
        ours = check_positive_solution(sys_)
        n, rows = sys_.n, np.array(sys_.rows, dtype=float)
        res = linprog(np.r_[np.zeros(n), -1.0], A_ub=np.hstack([-np.eye(n), np.ones((n, 1))]),
                      b_ub=np.zeros(n), A_eq=np.hstack([rows, np.zeros((len(rows), 1))]),
                      b_eq=np.ones(len(rows)), bounds=[(None, None)] * n + [(None, 1.0)])
        theirs = res.status == 0 and -res.fun > 1e-9
        assert ours.feasible == theirs


def test_edge_classes():
    assert edge_classes(MIXED).classes == ((0, 2, 3, 4, 6), (1,), (5,))
    d = split_diagram(FIVE_CLASS_PAIRS, 2)
    assert edge_classes(d).classes == ((0, 2), (1,), (3,), (4, 6), (5,))
    same = diagram(7, 2, [(i, 1, i, 2) for i in range(7)])
    assert len(edge_classes(same)) == 7
    single = diagram(8, 1, [(0, 1, 1, 1), (2, 1, 3, 1), (4, 1, 5, 1), (6, 1, 7, 1)])
    assert edge_classes(single).sizes() == [2, 2, 2, 2]


@pytest.mark.parametrize("pairs, k", [([], 5), ([(0, 1), (1, 2), (3, 4)], 2), ([(0, 0)], 5)])
def test_partition(pairs, k):
    assert len(edge_class_partition(5, pairs)) == k
