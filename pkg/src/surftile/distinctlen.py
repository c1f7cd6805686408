"""Tilings in which all ``n`` edges of the prototile may have distinct lengths.

All lengths can differ only when every pair glues equally labeled edges of
two different tiles.  For two tiles this leaves one free choice per label,
the sign, and the only constraint is that no two twisted labels are
cyclically adjacent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .convert import diagram_to_vertexset
from .diagram import Diagram, EdgePair, EdgeRef, ValidityReport, canonical_form
from .geomfilter import edge_classes
from .topology import SurfaceClass, classify_surface


@dataclass(frozen=True)
class TwistedIndexSet:
    """Labels ``i`` whose pair ``(i_1, i_2)`` is twisted."""

    n: int
    indices: tuple[int, ...]

    def __post_init__(self):
        ks = tuple(sorted(self.indices))
        if len(set(ks)) != len(ks) or any(not 0 <= k < self.n for k in ks):
            raise ValueError(f"indices must be distinct members of Z_{self.n}: {self.indices}")
        if len(ks) >= 2:
            gaps = [b - a for a, b in zip(ks, ks[1:])] + [ks[0] + self.n - ks[-1]]
            if min(gaps) < 2:
                raise ValueError(f"twisted labels {ks} are cyclically adjacent")
        object.__setattr__(self, "indices", ks)

    @property
    def tau(self) -> int:
        return len(self.indices)

    def diagram(self) -> Diagram:
        tw = set(self.indices)
        return Diagram(self.n, 2, tuple(EdgePair(EdgeRef(1, i), EdgeRef(2, i), -1 if i in tw else 1)
                                        for i in range(self.n)))


def _dihedral_min(n: int, ks: tuple[int, ...]) -> tuple[int, ...]:
    # labels move like edges: k -> c + k, or k -> c - 1 - k
    images = []
    for c in range(n):
        images.append(tuple(sorted((c + k) % n for k in ks)))
        images.append(tuple(sorted((c - 1 - k) % n for k in ks)))
    return min(images)


def twisted_index_sets(n: int) -> Iterator[TwistedIndexSet]:
    """One representative per dihedral orbit, by increasing size."""
    seen = set()
    for tau in range(n // 2 + 1):
        for ks in _non_adjacent(n, tau):
            rep = _dihedral_min(n, ks)
            if rep not in seen:
                seen.add(rep)
                yield TwistedIndexSet(n, rep)


def _non_adjacent(n, tau, start=0, chosen=()):
    if len(chosen) == tau:
        if tau < 2 or chosen[0] + n - chosen[-1] >= 2:
            yield chosen
        return
    for k in range(start, n):
        yield from _non_adjacent(n, tau, k + 2, chosen + (k,))


def expected_chi(n: int, tau: int) -> int:
    """Euler characteristic of the two-tile family member with ``tau`` twists.

    Every run of opposing pairs between consecutive twisted labels closes up
    into one vertex, so there are ``tau`` vertices.  With no twists the
    corners split by parity into one vertex (odd ``n``) or two (even ``n``).
    """
    v = tau if tau else (1 if n % 2 else 2)
    return v - n + 2


def two_tile_distinct_family(n: int) -> Iterator[tuple[TwistedIndexSet, Diagram, SurfaceClass]]:
    if n < 7:
        raise ValueError(f"n must be at least 7, got {n}")
    seen = set()
    for ks in twisted_index_sets(n):
        d = ks.diagram()
        canon = canonical_form(d)
        if canon in seen:  # pragma: no cover - dihedral reduction already dedups
            continue
        seen.add(canon)
        surf = classify_surface(d)
        if surf.chi != expected_chi(n, ks.tau) or surf.orientable != (ks.tau == 0):
            raise AssertionError(f"family member {ks.indices} classified as {surf}")
        yield ks, d, surf


def admissible_surfaces(n: int) -> list[SurfaceClass]:
    """Surfaces tiled by two congruent ``n``-gons with all lengths distinct.

    Non-orientable ``g`` runs over ``n - floor(n/2) .. n - 1``; the untwisted
    member adds the orientable surface of genus ``ceil(n/2) - 1`` for both
    parities of ``n``.
    """
    if n < 7:
        raise ValueError(f"n must be at least 7, got {n}")
    m = (n + 1) // 2
    out = [SurfaceClass(True, 2 - g, False) for g in range(n - n // 2, n)]
    out.append(SurfaceClass(True, 2 - 2 * (m - 1), True))
    return out


DISTINCT_CONDITIONS = ("all_lengths_distinct", "f_even", "same_label_pairs", "no_degree_3")


def check_distinct_necessary(d: Diagram) -> ValidityReport:
    """Whether all edge lengths may differ, with the necessary consequences.

    When every length may differ the consequences must hold too; a failure
    there means the inputs or this library are inconsistent.
    """
    bad = []
    k = len(edge_classes(d))
    if k != d.n:
        bad.append(("all_lengths_distinct", f"{k} edge classes < n={d.n}"))
    if d.f % 2:
        bad.append(("f_even", f"f={d.f} is odd"))
    for pr in d.pairs:
        if pr.a.label != pr.b.label or pr.a.tile == pr.b.tile:
            bad.append(("same_label_pairs", repr(pr)))
            break
    degs = [len(v) for v in diagram_to_vertexset(d).vertices]
    if 3 in degs:
        bad.append(("no_degree_3", f"vertex degrees {sorted(degs)}"))
    report = ValidityReport.build(DISTINCT_CONDITIONS, bad)
    if report.conditions["all_lengths_distinct"] and not report.ok:
        raise AssertionError(f"distinct lengths but {report.failed()} fails for {d!r}")
    return report
