"""Acceptance criteria, one test (and one printed status line) each.

Run ``pytest tests/test_acceptance.py`` for the summary section, or execute
this file directly to print the lines without pytest.
"""

from __future__ import annotations

import contextlib
import io
import random
import time
from collections import Counter, defaultdict
from fractions import Fraction

import pytest

from acceptance_log import record
from surftile.cli import main
from surftile.convert import (
    SignedCorner, check_pair_conditions, diagram_to_vertexset, next_corner, vertex_set, vertexset_to_diagram,
)
from surftile.diagram import apply_symmetry, canonical_form, symmetry_group
from surftile.distinctlen import admissible_surfaces, two_tile_distinct_family
from surftile.enumeration import GENERAL, ORIENTABLE, EnumSpec, count_table, enumerate_tilings, oracle_enumerate
from surftile.geomfilter import build_angle_system, check_positive_solution, edge_classes
from surftile.topology import classify_surface, connectivity, tile_orientations
from worked import (
    BOXED, FIVE_CLASS_PAIRS, GENUS3_PAIRS, MIXED, MIXED_VERTICES, oriented_cycle, random_valid, split_diagram,
)


def _check(tag, checks):
    """``checks`` maps a description to a bool; record and assert them all."""
    bad = [k for k, ok in checks.items() if not ok]
    record(tag, not bad, "all checks hold" if not bad else "failed: " + "; ".join(bad))
    assert not bad, bad


# 1 ---------------------------------------------------------------------------


def test_c1_worked_examples():
    t0 = time.perf_counter()
    v = diagram_to_vertexset(MIXED)
    s = classify_surface(MIXED)
    two = split_diagram(FIVE_CLASS_PAIRS, 2)
    one = split_diagram(FIVE_CLASS_PAIRS, 1)
    two_want = [[(0, 1), (4, 1), (3, 2), (0, 2), (4, 2), (3, 1)],
                [(1, 1), (2, 1), (1, 2), (2, 2)], [(5, 1), (6, 1), (5, 2), (6, 2)]]
    one_want = [[(0, 1), (4, 1), (4, 2), (0, 2), (3, 2), (3, 1)],
                [(1, 1), (2, 1), (2, 2), (1, 2)], [(5, 1), (6, 1), (6, 2), (5, 2)]]
    g2, g1 = split_diagram(GENUS3_PAIRS, 2), split_diagram(GENUS3_PAIRS, 1)
    checks = {
        "mixed: four listed vertices": v == vertex_set(7, 2, MIXED_VERTICES),
        "mixed: chi=-1, non-orientable, 3P2": (s.chi, s.orientable, s.name) == (-1, False, "3P2"),
        "mixed: next((0_1)+) = (5_2)-": next_corner(MIXED, SignedCorner(1, 0, 1)) == SignedCorner(2, 5, -1),
        "split 2: three listed vertices": diagram_to_vertexset(two) == vertex_set(
            7, 2, [oriented_cycle(2, c) for c in two_want]),
        "split 2: 2T2": classify_surface(two).name == "2T2",
        "split 1: three listed vertices": diagram_to_vertexset(one) == vertex_set(
            7, 2, [oriented_cycle(1, c) for c in one_want]),
        "split 1: 2T2": classify_surface(one).name == "2T2",
        "genus-3 pairs: 3 vertices at s=2, 1 at s=1":
            (len(diagram_to_vertexset(g2)), len(diagram_to_vertexset(g1))) == (3, 1),
        "genus-3 pairs: 2T2 then 3T2": (classify_surface(g2).name, classify_surface(g1).name) == ("2T2", "3T2"),
        "canonical forms agree with round trip": all(
            canonical_form(vertexset_to_diagram(diagram_to_vertexset(d))) == canonical_form(d)
            for d in (MIXED, two, one, g2, g1)),
    }
    checks["under one second"] = time.perf_counter() - t0 < 1.0
    _check("C1 worked examples", checks)


# 2 ---------------------------------------------------------------------------


def test_c2_angle_filter():
    boxed = check_positive_solution(build_angle_system(diagram_to_vertexset(BOXED)))
    sys_ = build_angle_system(diagram_to_vertexset(split_diagram(FIVE_CLASS_PAIRS, 2)))
    ok = check_positive_solution(sys_)
    _check("C2 angle filter", {
        "boxed diagram infeasible": not boxed.feasible,
        "five-class diagram feasible": ok.feasible,
        "witness strictly positive": ok.feasible and all(x > 0 for x in ok.witness),
        "witness exact": ok.feasible and all(r == Fraction(0) for r in sys_.residuals(ok.witness)),
    })


# 3 ---------------------------------------------------------------------------

TABLE = [
    # (label, spec, total, breakdown high->low or None, budget seconds)
    ("3P2 n=7", EnumSpec(7, 2, GENERAL, None, "3P2"), 443, [1, 6, 18, 85, 191, 142], 600),
    ("3P2 n=8", EnumSpec(8, 2, GENERAL, None, "3P2"), 358, [1, 6, 18, 71, 158, 104], 3600),
    ("2T2 n=7 s=2", EnumSpec(7, 2, ORIENTABLE, 2, "2T2"), 290, [3, 2, 20, 49, 110, 106], 600),
    ("2T2 n=7 s=1", EnumSpec(7, 2, ORIENTABLE, 1, "2T2"), 345, [8, 20, 98, 115, 104], 600),
    ("2T2 n=8 s=2", EnumSpec(8, 2, ORIENTABLE, 2, "2T2"), 594, None, 3600),
    ("2T2 n=8 s=1", EnumSpec(8, 2, ORIENTABLE, 1, "2T2"), 626, None, 3600),
]


def _row(spec):
    t0 = time.perf_counter()
    table = count_table(spec)
    elapsed = time.perf_counter() - t0
    key = (spec.target, spec.n, spec.mode, spec.split)
    return table.total(key), list(table.breakdown(key).values()), elapsed


@pytest.mark.slow
@pytest.mark.parametrize("label, spec, total, breakdown, budget", TABLE, ids=[t[0] for t in TABLE])
def test_c3_table_counts(label, spec, total, breakdown, budget):
    got, parts, elapsed = _row(spec)
    ok = got == total and (breakdown is None or parts == breakdown) and elapsed <= budget
    record(f"C3 table {label}", ok,
           f"total {got} (want {total}), breakdown {'/'.join(map(str, parts))}, {elapsed:.1f}s")
    assert ok


@pytest.mark.slow
def test_c3_stretch_nine_gons():
    got, parts, elapsed = _row(EnumSpec(9, 2, GENERAL, None, "3P2"))
    record("C3 stretch 3P2 n=9", None,
           f"total {got} (reference 48), breakdown {'/'.join(map(str, parts))}, {elapsed:.1f}s")


@pytest.mark.slow
def test_c3_stretch_four_crosscaps():
    got, parts, elapsed = _row(EnumSpec(7, 2, GENERAL, None, "4P2"))
    # orientable split-1 tilings that contain an opposing pair: a count that
    # treats "all pairs twisted alike" as the orientability test would put
    # these among the non-orientable ones
    mixed_signs = sum(1 for r in enumerate_tilings(EnumSpec(7, 2, ORIENTABLE, 1, "2T2"))
                      if any(p.sign > 0 for p in r.diagram.pairs))
    record("C3 stretch 4P2 n=7", None,
           f"total {got} (reference 16568), breakdown {'/'.join(map(str, parts))}, {elapsed:.1f}s; "
           f"{got} + {mixed_signs} split-1 2T2 tilings with an opposing pair = {got + mixed_signs}")


# 4 ---------------------------------------------------------------------------

HEPTAGON_SURFACES = ["3P2", "2T2", "4P2", "5P2", "3T2", "6P2"]


@pytest.fixture(scope="module")
def heptagon_oracle():
    # keep compact keys only; the full record lists do not fit in memory twice
    by_surface = defaultdict(list)
    for r in oracle_enumerate(EnumSpec(7, 2, GENERAL)):
        by_surface[r.surface.name].append((r.diagram.key, r.edge_classes))
    return by_surface


@pytest.mark.slow
@pytest.mark.parametrize("surface", HEPTAGON_SURFACES)
def test_c4_oracle_heptagons(surface, heptagon_oracle):
    ours = enumerate_tilings(EnumSpec(7, 2, GENERAL, None, surface))
    theirs = heptagon_oracle[surface]
    ok = [(r.diagram.key, r.edge_classes) for r in ours] == theirs
    record(f"C4 oracle n=7 f=2 {surface}", ok, f"enumerate {len(ours)}, oracle {len(theirs)}")
    assert ok


@pytest.mark.slow
def test_c4_oracle_heptagons_cover_everything(heptagon_oracle):
    surfaces = set(heptagon_oracle)
    ok = surfaces <= set(HEPTAGON_SURFACES)
    record("C4 oracle n=7 f=2 surface list", ok, f"oracle surfaces {sorted(surfaces)}")
    assert ok


def test_c4_oracle_octagon():
    ours = enumerate_tilings(EnumSpec(8, 1, GENERAL))
    theirs = oracle_enumerate(EnumSpec(8, 1, GENERAL))
    ok = [r.diagram for r in ours] == [r.diagram for r in theirs] and \
        Counter(r.surface.name for r in ours) == Counter(r.surface.name for r in theirs)
    record("C4 oracle n=8 f=1", ok, f"enumerate {len(ours)}, oracle {len(theirs)}")
    assert ok


# 5 ---------------------------------------------------------------------------

SHAPES = [(7, 2), (8, 1), (8, 2), (9, 2), (10, 1), (10, 2)]


def test_c5_properties():
    rng = random.Random(1018)
    sample = [random_valid(rng, *SHAPES[k % len(SHAPES)]) for k in range(1000)]
    bad = Counter()
    groups = {}
    for d in sample:
        v = diagram_to_vertexset(d)
        bad["round trip"] += vertexset_to_diagram(v) != d
        cs = [SignedCorner(p, i, s) for p in range(1, d.f + 1) for i in range(d.n) for s in (1, -1)]
        bad["mirror inverse"] += any(next_corner(d, next_corner(d, c.mirror()).mirror()) != c for c in cs)
        bad["degree criterion"] += check_pair_conditions(d).ok != (min(v.degrees) >= 3)
        sys_ = build_angle_system(v)
        bad["conservation"] += [sum(c) for c in zip(*sys_.rows)] != [d.f] * d.n
        verdict = check_positive_solution(sys_)
        if verdict.feasible:
            bad["witness exact"] += any(r != 0 for r in sys_.residuals(verdict.witness)) or \
                any(x <= 0 for x in verdict.witness)
        G = groups.setdefault((d.n, d.f), symmetry_group(d.n, d.f))
        conn = connectivity(d)
        chi = classify_surface(d).chi if conn else None
        orient = tile_orientations(d) is not None
        for _ in range(50):
            e = apply_symmetry(d, rng.choice(G))
            bad["chi invariance"] += conn and classify_surface(e).chi != chi
            bad["orientability invariance"] += (tile_orientations(e) is not None) != orient
    for name in ("round trip", "mirror inverse", "degree criterion", "conservation", "witness exact",
                 "chi invariance", "orientability invariance"):
        bad.setdefault(name, 0)
    _check("C5 properties over 1000 diagrams", {f"{k} ({v} failures)": v == 0 for k, v in bad.items()})


# 6 ---------------------------------------------------------------------------


def test_c6_distinct_lengths():
    checks = {}
    for n in range(7, 13):
        fam = list(two_tile_distinct_family(n))
        checks[f"n={n}: surfaces match the admissible list"] = \
            {s.name for _k, _d, s in fam} == {s.name for s in admissible_surfaces(n)}
        checks[f"n={n}: n edge classes"] = all(len(edge_classes(d)) == n for _k, d, _s in fam)
        checks[f"n={n}: min degree >= 4"] = all(min(diagram_to_vertexset(d).degrees) >= 4 for _k, d, _s in fam)
        checks[f"n={n}: f <= -4chi/(n-4)"] = all(Fraction(2) <= Fraction(-4 * s.chi, n - 4) for _k, _d, s in fam)
    checks["n=7 surfaces are 4P2, 5P2, 6P2, 3T2"] = \
        {s.name for _k, _d, s in two_tile_distinct_family(7)} == {"4P2", "5P2", "6P2", "3T2"}
    _check("C6 all-distinct edge lengths", checks)


# 7 ---------------------------------------------------------------------------

DETERMINISM = [
    ["--n", "7", "--f", "2", "--surface", "3P2"],
    ["--n", "7", "--f", "2", "--surface", "2T2"],
    ["--n", "8", "--f", "2", "--surface", "3P2"],
    ["--n", "8", "--f", "2", "--surface", "2T2"],
]


def _table_output(args, threads):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        assert main(["table", *args, "--threads", str(threads)]) == 0
    return buf.getvalue().encode()


@pytest.mark.slow
@pytest.mark.parametrize("args", DETERMINISM, ids=[" ".join(a) for a in DETERMINISM])
def test_c7_table_determinism(args):
    outs = [_table_output(args, k) for k in (1, 2, 8)]
    ok = outs[0] == outs[1] == outs[2]
    record(f"C7 determinism table {' '.join(args)}", ok,
           "byte-identical for 1, 2, 8 threads" if ok else "outputs differ")
    assert ok


if __name__ == "__main__":  # pragma: no cover
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
