"""Randomised invariants over a fixed, seeded sample of valid diagrams."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surftile.convert import (
    SignedCorner, check_pair_conditions, diagram_to_vertexset, next_corner, vertexset_to_diagram,
)
from surftile.diagram import apply_symmetry, canonical_form, symmetry_group
from surftile.geomfilter import build_angle_system, check_positive_solution, edge_classes
from surftile.topology import classify_surface, connectivity, tile_orientations
from worked import random_matching, random_valid

SAMPLE = 1000
SHAPES = [(7, 2), (8, 1), (8, 2), (9, 2), (10, 1), (10, 2)]


@pytest.fixture(scope="module")
def sample():
    rng = random.Random(20261018)
    return [random_valid(rng, *SHAPES[k % len(SHAPES)]) for k in range(SAMPLE)]


def _corners(d):
    return [SignedCorner(p, i, s) for p in range(1, d.f + 1) for i in range(d.n) for s in (1, -1)]


def test_sample_size(sample):
    assert len(sample) >= 1000
    assert {(d.n, d.f) for d in sample} == set(SHAPES)


def test_round_trip(sample):
    for d in sample:
        v = diagram_to_vertexset(d)
        assert vertexset_to_diagram(v) == d
        assert diagram_to_vertexset(vertexset_to_diagram(v)) == v
        assert sum(v.degrees) == d.n * d.f


def test_mirror_inverse(sample):
    for d in sample:
        cs = _corners(d)
        images = {next_corner(d, c) for c in cs}
        assert len(images) == len(cs)  # bijection
        for c in cs:
            assert next_corner(d, next_corner(d, c.mirror()).mirror()) == c


def test_degree_criterion_on_arbitrary_matchings():
    rng = random.Random(7)
    hits = 0
    for k in range(SAMPLE):
        d = random_matching(rng, *SHAPES[k % len(SHAPES)])
        ok = min(diagram_to_vertexset(d).degrees) >= 3
        hits += ok
        assert check_pair_conditions(d).ok == ok
    assert 0 < hits < SAMPLE


def test_pair_conditions_hold_on_sample(sample):
    assert all(min(diagram_to_vertexset(d).degrees) >= 3 for d in sample)


def test_group_invariance(sample):
    rng = random.Random(3)
    groups = {}
    for d in sample:
        G = groups.setdefault((d.n, d.f), symmetry_group(d.n, d.f))
        connected = connectivity(d)
        surf = classify_surface(d) if connected else None
        orient = tile_orientations(d) is not None
        sizes = edge_classes(d).sizes()
        for _ in range(50):
            e = apply_symmetry(d, rng.choice(G))
            assert (tile_orientations(e) is not None) == orient
            assert connectivity(e) == connected
            if connected:
                assert classify_surface(e) == surf
            assert edge_classes(e).sizes() == sizes


def test_negative_chi(sample):
    for d in sample:
        if connectivity(d):
            assert classify_surface(d).chi < 0


def test_witnesses_and_conservation(sample):
    feasible = 0
    for d in sample:
        v = diagram_to_vertexset(d)
        sys_ = build_angle_system(v)
        assert [sum(col) for col in zip(*sys_.rows)] == [d.f] * d.n
        verdict = check_positive_solution(sys_)
        if verdict.feasible:
            feasible += 1
            x = verdict.witness
            assert all(xi > 0 for xi in x)
            assert all(r == 0 for r in sys_.residuals(x))
            assert sum(x) * d.f == len(v)
        else:
            assert verdict.witness is None
    assert feasible > 0


def test_feasibility_is_group_invariant(sample):
    rng = random.Random(9)
    for d in sample[:200]:
        G = symmetry_group(d.n, d.f)
        want = check_positive_solution(build_angle_system(diagram_to_vertexset(d))).feasible
        e = apply_symmetry(d, rng.choice(G))
        assert check_positive_solution(build_angle_system(diagram_to_vertexset(e))).feasible == want


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(SHAPES))
def test_canonical_form_constant_on_orbits(rnd, shape):
    d = random_matching(rnd, *shape)
    g = rnd.choice(symmetry_group(*shape))
    c = canonical_form(d)
    assert canonical_form(apply_symmetry(d, g)) == c
    assert canonical_form(c) == c
