"""Signed multiple planar diagrams and their relabeling group.

A diagram glues the edges of ``f`` labeled copies of an ``n``-gon in pairs.
Edge ``i`` of tile ``p`` joins corners ``i`` and ``i+1`` of that tile; labels
live in ``Z_n`` (0-based), tiles are numbered from 1.  Each pair carries a sign:
``+1`` for an opposing gluing, ``-1`` for a twisted one.

Internally every edge and corner is also addressed by a flat index
``(tile - 1) * n + label``, which orders edges by (tile, label).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class DiagramError(ValueError):
    """Raised for malformed diagrams or invalid group elements."""


@dataclass(frozen=True, order=True)
class EdgeRef:
    """Edge ``label`` of tile ``tile``; compares by (tile, label)."""

    tile: int
    label: int

    def index(self, n: int) -> int:
        return (self.tile - 1) * n + self.label

    @classmethod
    def from_index(cls, idx: int, n: int) -> EdgeRef:
        return cls(idx // n + 1, idx % n)

    def __repr__(self) -> str:
        return f"{self.label}~{self.tile}"


@dataclass(frozen=True, order=True)
class CornerRef:
    """Corner ``label`` of tile ``tile``."""

    tile: int
    label: int

    def __repr__(self) -> str:
        return f"{self.label}_{self.tile}"


def edge(label: int, tile: int) -> EdgeRef:
    """Build an edge with the label first: ``edge(3, 1)`` is edge 3 of tile 1."""
    return EdgeRef(tile, label)


@dataclass(frozen=True)
class EdgePair:
    """An unordered signed pair of distinct edges, stored smaller edge first."""

    a: EdgeRef
    b: EdgeRef
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DiagramError(f"pair sign must be +1 or -1, got {self.sign!r}")
        if self.a == self.b:
            raise DiagramError(f"edge {self.a!r} paired with itself")
        if self.b < self.a:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    @property
    def key(self) -> tuple[int, int, int, int, int]:
        return (self.a.tile, self.a.label, self.b.tile, self.b.label, self.sign)

    def __lt__(self, other: EdgePair) -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        return f"({self.a!r} {self.b!r}){'+' if self.sign > 0 else '-'}"


def pair(i: int, p: int, j: int, q: int, sign: int = 1) -> EdgePair:
    """``pair(i, p, j, q, s)`` is the pair (i-bar_p, j-bar_q) with sign s."""
    return EdgePair(EdgeRef(p, i), EdgeRef(q, j), sign)


@dataclass(frozen=True)
class Diagram:
    """A signed perfect matching on all ``n * f`` edges.

    ``pairs`` is normalised to a sorted tuple on construction, so two diagrams
    compare equal exactly when they have the same signed pairs.
    """

    n: int
    f: int
    pairs: tuple[EdgePair, ...]

    def __post_init__(self):
        n, f = self.n, self.f
        if n < 3:
            raise DiagramError(f"n must be at least 3, got {n}")
        if f < 1:
            raise DiagramError(f"f must be at least 1, got {f}")
        pairs = tuple(sorted(self.pairs))
        seen: dict[EdgeRef, EdgePair] = {}
        for pr in pairs:
            for e in (pr.a, pr.b):
                if not (0 <= e.label < n and 1 <= e.tile <= f):
                    raise DiagramError(f"edge {e!r} of pair {pr!r} out of range for n={n}, f={f}")
                if e in seen:
                    raise DiagramError(f"edge {e!r} occurs in both {seen[e]!r} and {pr!r}")
                seen[e] = pr
        if len(seen) != n * f:
            missing = [EdgeRef(p, i) for p in range(1, f + 1) for i in range(n)
                       if EdgeRef(p, i) not in seen]
            raise DiagramError(f"not a perfect matching: unpaired edges {missing!r}")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_arrays(cls, n: int, f: int, partner: Sequence[int], sign: Sequence[int]) -> Diagram:
        """Build from flat partner/sign arrays indexed by edge index."""
        pairs = []
        for e, o in enumerate(partner):
            if o < 0:
                raise DiagramError(f"edge {EdgeRef.from_index(e, n)!r} is unmatched")
            if partner[o] != e:
                raise DiagramError("partner array is not an involution")
            if e < o:
                pairs.append(EdgePair(EdgeRef.from_index(e, n), EdgeRef.from_index(o, n), sign[e]))
        return cls(n, f, tuple(pairs))

    @cached_property
    def partner(self) -> tuple[int, ...]:
        out = [0] * (self.n * self.f)
        for pr in self.pairs:
            a, b = pr.a.index(self.n), pr.b.index(self.n)
            out[a], out[b] = b, a
        return tuple(out)

    @cached_property
    def signs(self) -> tuple[int, ...]:
        """Per-edge sign of the pair containing it."""
        out = [0] * (self.n * self.f)
        for pr in self.pairs:
            out[pr.a.index(self.n)] = out[pr.b.index(self.n)] = pr.sign
        return tuple(out)

    def partner_of(self, e: EdgeRef) -> tuple[EdgeRef, int]:
        idx = e.index(self.n)
        return EdgeRef.from_index(self.partner[idx], self.n), self.signs[idx]

    @property
    def key(self) -> tuple:
        return tuple(pr.key for pr in self.pairs)

    def __lt__(self, other: Diagram) -> bool:
        return (self.n, self.f, self.key) < (other.n, other.f, other.key)

    def __repr__(self) -> str:
        return f"Diagram(n={self.n}, f={self.f}, {' '.join(map(repr, self.pairs))})"


def diagram(n: int, f: int, pairs: Iterable[tuple]) -> Diagram:
    """Shorthand: ``diagram(7, 2, [(0, 1, 3, 1, +1), ...])``.

    Tuples are ``(i, p, j, q)`` or ``(i, p, j, q, sign)``; sign defaults to +1.
    """
    return Diagram(n, f, tuple(pair(*t) for t in pairs))


def with_split_signs(d: Diagram, split: int) -> Diagram:
    """Re-sign ``d`` as an orientable diagram whose first ``split`` tiles agree
    with the surface orientation: same-side pairs opposing, cross pairs twisted."""
    def side(p):
        return p <= split
    return Diagram(d.n, d.f, tuple(
        EdgePair(pr.a, pr.b, 1 if side(pr.a.tile) == side(pr.b.tile) else -1) for pr in d.pairs))


# -- relabeling group ---------------------------------------------------------


@dataclass(frozen=True)
class SymmetryElement:
    """Relabeling of the prototile composed with a relabeling of the tiles.

    ``reflect=False`` maps corner ``i`` to ``shift + i`` (edge ``i`` to
    ``shift + i``); ``reflect=True`` maps corner ``i`` to ``shift - i`` and
    edge ``i`` to ``shift - i - 1``.  Tile ``p`` goes to ``tile_perm[p - 1]``.
    ``group_swap`` marks an element exchanging the two orientation classes of
    an orientable split; it is only legal when ``2 * split == f``.
    """

    shift: int = 0
    reflect: bool = False
    tile_perm: tuple[int, ...] = (1,)
    group_swap: bool = False

    def edge_label(self, i: int, n: int) -> int:
        return (self.shift - i - 1) % n if self.reflect else (self.shift + i) % n

    def corner_label(self, i: int, n: int) -> int:
        return (self.shift - i) % n if self.reflect else (self.shift + i) % n

    def validate(self, n: int, f: int, split: int | None = None) -> None:
        if len(self.tile_perm) != f or sorted(self.tile_perm) != list(range(1, f + 1)):
            raise DiagramError(f"tile_perm {self.tile_perm!r} is not a permutation of 1..{f}")
        if split is None:
            if self.group_swap:
                raise DiagramError("group_swap is only meaningful for an orientable split")
            return
        plus = set(range(1, split + 1))
        image = {self.tile_perm[p - 1] for p in plus}
        if self.group_swap:
            if 2 * split != f:
                raise DiagramError(f"group_swap requires 2*split == f (split={split}, f={f})")
            if image != set(range(f - split + 1, f + 1)):
                raise DiagramError("group_swap element must exchange the two orientation classes")
        elif image != plus:
            raise DiagramError("tile_perm does not preserve the orientation split")

    def edge_perm(self, n: int, f: int) -> tuple[int, ...]:
        """Image of every flat edge index."""
        return tuple((self.tile_perm[p] - 1) * n + self.edge_label(i, n)
                     for p in range(f) for i in range(n))

    def compose(self, other: SymmetryElement, n: int) -> SymmetryElement:
        """``self ∘ other`` (apply ``other`` first)."""
        shift = (self.shift - other.shift if self.reflect else self.shift + other.shift) % n
        perm = tuple(self.tile_perm[q - 1] for q in other.tile_perm)
        return SymmetryElement(shift, self.reflect != other.reflect, perm,
                               self.group_swap != other.group_swap)


def apply_symmetry(d: Diagram, g: SymmetryElement) -> Diagram:
    """Relabel ``d`` by ``g``.  Signs are preserved."""
    if len(g.tile_perm) != d.f or sorted(g.tile_perm) != list(range(1, d.f + 1)):
        raise DiagramError(f"tile_perm {g.tile_perm!r} is not a permutation of 1..{d.f}")
    n = d.n
    out = []
    for pr in d.pairs:
        a = EdgeRef(g.tile_perm[pr.a.tile - 1], g.edge_label(pr.a.label, n))
        b = EdgeRef(g.tile_perm[pr.b.tile - 1], g.edge_label(pr.b.label, n))
        out.append(EdgePair(a, b, pr.sign))
    return Diagram(n, d.f, tuple(out))


def _tile_perms(f: int, split: int | None) -> Iterator[tuple[tuple[int, ...], bool]]:
    if split is None:
        for perm in itertools.permutations(range(1, f + 1)):
            yield perm, False
        return
    plus = list(range(1, split + 1))
    minus = list(range(split + 1, f + 1))
    for pp in itertools.permutations(plus):
        for mp in itertools.permutations(minus):
            yield tuple(pp) + tuple(mp), False
    if 2 * split == f and f > 0:
        # exchange: T+ -> {f-s+1..f}, T- -> {1..f-s}
        for pp in itertools.permutations(minus):
            for mp in itertools.permutations(plus):
                yield tuple(pp) + tuple(mp), True


def symmetry_group(n: int, f: int, split: int | None = None) -> list[SymmetryElement]:
    """All relabelings for the general group (``split=None``) or for an
    orientable split ``split`` (tile maps preserving or, when ``2*split == f``,
    exchanging the two orientation classes)."""
    if split is not None and not (0 <= split <= f):
        raise DiagramError(f"split must lie in 0..{f}, got {split}")
    out = []
    for perm, swap in _tile_perms(f, split):
        for reflect in (False, True):
            for c in range(n):
                out.append(SymmetryElement(c, reflect, perm, swap))
    return out


def group_edge_perms(n: int, f: int, split: int | None = None) -> list[tuple[int, ...]]:
    """Edge-index permutations of :func:`symmetry_group`, identity first."""
    perms = [g.edge_perm(n, f) for g in symmetry_group(n, f, split)]
    return perms


def encode(n: int, f: int, partner: Sequence[int], sign: Sequence[int]) -> tuple[int, ...]:
    """Order-preserving integer encoding of the sorted pair list.

    Walking edges in index order and recording ``(partner, sign)`` for the first
    edge of each pair reproduces the sorted pair list, so tuples of
    ``partner * 2 + (sign > 0)`` compare exactly like the pair lists do.
    """
    return tuple(partner[e] * 2 + (sign[e] > 0) for e in range(n * f) if partner[e] > e)


def _image_code(perm, partner, sign, nf):
    img_p = [0] * nf
    img_s = [0] * nf
    for e in range(nf):
        ge, go = perm[e], perm[partner[e]]
        img_p[ge] = go
        img_s[ge] = sign[e]
    return tuple(img_p[e] * 2 + (img_s[e] > 0) for e in range(nf) if img_p[e] > e), img_p, img_s


def canonical_form(d: Diagram, split: int | None = None) -> Diagram:
    """Least diagram in the orbit of ``d`` under the relabeling group.

    ``split=None`` uses the general group; an integer uses the orientable-mode
    group for that split.
    """
    nf = d.n * d.f
    partner, sign = d.partner, d.signs
    best = None
    for perm in group_edge_perms(d.n, d.f, split):
        code, p, s = _image_code(perm, partner, sign, nf)
        if best is None or code < best[0]:
            best = (code, p, s)
    return Diagram.from_arrays(d.n, d.f, best[1], best[2])


def orbit(d: Diagram, split: int | None = None) -> set[Diagram]:
    return {apply_symmetry(d, g) for g in symmetry_group(d.n, d.f, split)}


# -- JSON ---------------------------------------------------------------------


def diagram_to_obj(d: Diagram) -> dict:
    return {
        "n": d.n,
        "f": d.f,
        "pairs": [{"a": [p.a.label, p.a.tile], "b": [p.b.label, p.b.tile], "sign": p.sign}
                  for p in d.pairs],
    }


def serialize_diagram(d: Diagram) -> bytes:
    return json.dumps(diagram_to_obj(d), separators=(",", ":")).encode("utf-8")


def _ref(value, what, idx) -> EdgeRef:
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in value)):
        raise DiagramError(f"pair #{idx}: {what!r} must be [label, tile], got {value!r}")
    return EdgeRef(value[1], value[0])


def diagram_from_obj(obj) -> Diagram:
    if not isinstance(obj, dict):
        raise DiagramError("diagram JSON must be an object")
    try:
        n, f, raw = obj["n"], obj["f"], obj["pairs"]
    except KeyError as exc:
        raise DiagramError(f"missing key {exc.args[0]!r}") from None
    if not isinstance(n, int) or not isinstance(f, int) or not isinstance(raw, list):
        raise DiagramError("'n' and 'f' must be integers and 'pairs' a list")
    pairs = []
    for idx, item in enumerate(raw):
        if not isinstance(item, dict) or set(item) != {"a", "b", "sign"}:
            raise DiagramError(f"pair #{idx} must have exactly keys a, b, sign: {item!r}")
        a, b = _ref(item["a"], "a", idx), _ref(item["b"], "b", idx)
        for e in (a, b):
            if not (0 <= e.label < n and 1 <= e.tile <= f):
                raise DiagramError(f"pair #{idx} {item!r}: edge [{e.label},{e.tile}] out of range "
                                   f"for n={n}, f={f}")
        try:
            pairs.append(EdgePair(a, b, item["sign"]))
        except DiagramError as exc:
            raise DiagramError(f"pair #{idx} {item!r}: {exc}") from None
    return Diagram(n, f, tuple(pairs))


def parse_diagram(text: bytes | str) -> Diagram:
    """Parse the JSON diagram format; raises :class:`DiagramError`."""
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DiagramError(f"malformed JSON: {exc}") from None
    return diagram_from_obj(obj)


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of a validity check: per-condition verdicts plus witnesses."""

    conditions: dict[str, bool]
    violations: tuple[tuple[str, str], ...] = field(default=())

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    def __bool__(self) -> bool:
        return self.ok

    def failed(self) -> list[str]:
        return [k for k, v in self.conditions.items() if not v]

    @classmethod
    def build(cls, names: Sequence[str], violations: Iterable[tuple[str, str]]) -> ValidityReport:
        violations = tuple(violations)
        bad = {name for name, _ in violations}
        return cls({name: name not in bad for name in names}, violations)

    def lines(self) -> list[str]:
        out = [f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in self.conditions.items()]
        out += [f"  {name}: {witness}" for name, witness in self.violations]
        return out
