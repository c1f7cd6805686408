"""Diagrams <-> vertex sets.

Each signed corner ``(i_p)_s`` has a successor around its vertex: at ``(i_p)_+``
the gluing is read across edge ``i-1`` of tile ``p``, at ``(i_p)_-`` across edge
``i``.  If that edge is paired with edge ``j`` of tile ``q`` with sign ``σ``,
the successor carries sign ``s·σ`` and sits at corner ``j`` (sign ``+``) or
``j+1`` (sign ``-``) of tile ``q``.  Vertices are the cycles of this
permutation; the mirror map flipping every sign reverses the cycles, so each
vertex shows up twice and is stored once in a canonical orientation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .diagram import Diagram, DiagramError, EdgePair, EdgeRef, ValidityReport


class VertexSetError(ValueError):
    """Raised when a family of corner cycles is not a genuine vertex set."""


@dataclass(frozen=True, order=True)
class SignedCorner:
    tile: int
    label: int
    sign: int

    def mirror(self) -> SignedCorner:
        return SignedCorner(self.tile, self.label, -self.sign)

    def __repr__(self) -> str:
        return f"({self.label}_{self.tile}){'+' if self.sign > 0 else '-'}"


def corner(label: int, tile: int, sign: int = 1) -> SignedCorner:
    """Label-first constructor: ``corner(0, 1, +1)`` is ``(0_1)_+``."""
    return SignedCorner(tile, label, sign)


def canonical_cycle(cycle: Sequence[SignedCorner]) -> tuple[SignedCorner, ...]:
    """Least rotation of the cycle or of its sign-flipped reversal."""
    cyc = list(cycle)
    if not cyc:
        raise VertexSetError("empty vertex")
    rev = [c.mirror() for c in reversed(cyc)]
    k = len(cyc)
    return min(tuple(seq[r:] + seq[:r]) for seq in (cyc, rev) for r in range(k))


@dataclass(frozen=True)
class VertexSet:
    """Corner cycles partitioning all ``n * f`` corners.

    Vertices are canonicalised and sorted on construction.
    """

    n: int
    f: int
    vertices: tuple[tuple[SignedCorner, ...], ...]

    def __post_init__(self):
        verts = tuple(sorted(canonical_cycle(v) for v in self.vertices))
        seen = set()
        for v in verts:
            for c in v:
                if not (0 <= c.label < self.n and 1 <= c.tile <= self.f) or c.sign not in (1, -1):
                    raise VertexSetError(f"corner {c!r} out of range for n={self.n}, f={self.f}")
                if (c.tile, c.label) in seen:
                    raise VertexSetError(f"corner {c.label}_{c.tile} appears more than once")
                seen.add((c.tile, c.label))
        if len(seen) != self.n * self.f:
            raise VertexSetError(f"vertices cover {len(seen)} of {self.n * self.f} corners")
        object.__setattr__(self, "vertices", verts)

    @property
    def degrees(self) -> list[int]:
        return [len(v) for v in self.vertices]

    def __len__(self) -> int:
        return len(self.vertices)


def vertex_set(n: int, f: int, cycles: Iterable[Iterable[tuple[int, int, int]]]) -> VertexSet:
    """Shorthand from ``(label, tile, sign)`` triples."""
    return VertexSet(n, f, tuple(tuple(corner(*t) for t in cyc) for cyc in cycles))


# -- traversal ----------------------------------------------------------------


def next_corner(d: Diagram, c: SignedCorner) -> SignedCorner:
    n = d.n
    e = EdgeRef(c.tile, (c.label - 1) % n if c.sign > 0 else c.label)
    other, sigma = d.partner_of(e)
    s = c.sign * sigma
    return SignedCorner(other.tile, other.label if s > 0 else (other.label + 1) % n, s)


def successor_array(n: int, f: int, partner: Sequence[int], sign: Sequence[int]) -> list[int]:
    """``next_corner`` on flat signed-corner indices ``2 * corner + (sign < 0)``."""
    nxt = [0] * (2 * n * f)
    for idx in range(n * f):
        base = idx - idx % n
        i = idx % n
        for neg in (0, 1):
            e = base + (i - 1) % n if not neg else idx
            o = partner[e]
            s = (-1 if neg else 1) * sign[e]
            q0, j = o - o % n, o % n
            tgt = q0 + j if s > 0 else q0 + (j + 1) % n
            nxt[2 * idx + neg] = 2 * tgt + (s < 0)
    return nxt


def _cycles(nxt: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(nxt)
    out = []
    for start in range(len(nxt)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = nxt[x]
        out.append(cyc)
    return out


def diagram_to_vertexset(d: Diagram) -> VertexSet:
    n = d.n
    nxt = successor_array(n, d.f, d.partner, d.signs)
    kept = {}
    # a cycle and its mirror cover the same unsigned corners
    for cyc in _cycles(nxt):
        members = frozenset(x >> 1 for x in cyc)
        kept.setdefault(members, cyc)
    verts = []
    for cyc in kept.values():
        verts.append(tuple(SignedCorner(x // 2 // n + 1, (x // 2) % n, -1 if x & 1 else 1)
                           for x in cyc))
    return VertexSet(n, d.f, tuple(verts))


def vertex_count(d: Diagram) -> int:
    return len(_cycles(successor_array(d.n, d.f, d.partner, d.signs))) // 2


# -- vertex set -> diagram ----------------------------------------------------


def adjacent_pair(n: int, x: SignedCorner, y: SignedCorner) -> EdgePair:
    """Edge pair implied by consecutive corners ``x y`` of a vertex."""
    i, p, j, q = x.label, x.tile, y.label, y.tile
    if x.sign > 0 and y.sign > 0:
        return EdgePair(EdgeRef(p, (i - 1) % n), EdgeRef(q, j), 1)
    if x.sign < 0 and y.sign > 0:
        return EdgePair(EdgeRef(p, i), EdgeRef(q, j), -1)
    if x.sign > 0 and y.sign < 0:
        return EdgePair(EdgeRef(p, (i - 1) % n), EdgeRef(q, (j - 1) % n), -1)
    return EdgePair(EdgeRef(p, i), EdgeRef(q, (j - 1) % n), 1)


def vertex_pairs(n: int, vertex: Sequence[SignedCorner]) -> list[EdgePair]:
    """Pairs implied by one vertex, in traversal order (duplicates kept)."""
    k = len(vertex)
    return [adjacent_pair(n, vertex[t], vertex[(t + 1) % k]) for t in range(k)]


def vertexset_to_diagram(v: VertexSet) -> Diagram:
    by_edge: dict[EdgeRef, EdgePair] = {}
    for vert in v.vertices:
        for pr in vertex_pairs(v.n, vert):
            for e in (pr.a, pr.b):
                old = by_edge.get(e)
                if old is not None and old != pr:
                    raise VertexSetError(f"edge {e!r} forced into both {old!r} and {pr!r}")
                by_edge[e] = pr
    try:
        return Diagram(v.n, v.f, tuple(set(by_edge.values())))
    except DiagramError as exc:
        raise VertexSetError(str(exc)) from None


# -- validity -----------------------------------------------------------------

VERTEX_CONDITIONS = ("min_degree_3", "no_backtrack", "opposing_closure", "twisted_closure")
PAIR_CONDITIONS = ("no_degree_1", "no_degree_2_opposing", "no_degree_2_twisted")


def _adjacency(v: VertexSet) -> set[tuple[SignedCorner, SignedCorner]]:
    adj = set()
    for vert in v.vertices:
        k = len(vert)
        for t in range(k):
            x, y = vert[t], vert[(t + 1) % k]
            adj.add((x, y))
            adj.add((y.mirror(), x.mirror()))
    return adj


def check_vertexset(v: VertexSet) -> ValidityReport:
    n = v.n
    bad = []
    for vert in v.vertices:
        if len(vert) < 3:
            bad.append(("min_degree_3", f"vertex {''.join(map(repr, vert))} has degree {len(vert)}"))
    adj = _adjacency(v)
    for x, y in sorted(adj):
        if x.sign < 0:
            continue
        if y.sign > 0:
            if y.tile == x.tile and y.label == (x.label - 1) % n:
                bad.append(("no_backtrack", f"{x!r}{y!r}"))
            need = (SignedCorner(y.tile, (y.label + 1) % n, 1), SignedCorner(x.tile, (x.label - 1) % n, 1))
            if need not in adj:
                bad.append(("opposing_closure", f"{x!r}{y!r} without {need[0]!r}{need[1]!r}"))
        else:
            need = (SignedCorner(y.tile, (y.label - 1) % n, -1), SignedCorner(x.tile, (x.label - 1) % n, 1))
            if need not in adj:
                bad.append(("twisted_closure", f"{x!r}{y!r} without {need[0]!r}{need[1]!r}"))
    return ValidityReport.build(VERTEX_CONDITIONS, bad)


def check_pair_conditions(d: Diagram) -> ValidityReport:
    n = d.n
    bad = []
    for pr in d.pairs:
        for x, y in ((pr.a, pr.b), (pr.b, pr.a)):
            if pr.sign > 0 and y.tile == x.tile and y.label == (x.label + 1) % n:
                bad.append(("no_degree_1", repr(pr)))
            step = -1 if pr.sign > 0 else 1
            nx = EdgeRef(x.tile, (x.label + 1) % n)
            ny = EdgeRef(y.tile, (y.label + step) % n)
            if nx == y and ny == x:
                continue
            other, s = d.partner_of(nx)
            if other == ny and s == pr.sign:
                name = "no_degree_2_opposing" if pr.sign > 0 else "no_degree_2_twisted"
                bad.append((name, f"{pr!r} with {EdgePair(nx, ny, s)!r}"))
    return ValidityReport.build(PAIR_CONDITIONS, bad)


# -- JSON ---------------------------------------------------------------------


def vertexset_to_obj(v: VertexSet) -> dict:
    return {"n": v.n, "f": v.f,
            "vertices": [[[c.label, c.tile, c.sign] for c in vert] for vert in v.vertices]}


def serialize_vertexset(v: VertexSet) -> bytes:
    return json.dumps(vertexset_to_obj(v), separators=(",", ":")).encode("utf-8")


def vertexset_from_obj(obj) -> VertexSet:
    try:
        n, f, raw = obj["n"], obj["f"], obj["vertices"]
        cycles = [[corner(int(c[0]), int(c[1]), int(c[2])) for c in cyc] for cyc in raw]
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise VertexSetError(f"malformed vertex-set JSON: {exc!r}") from None
    return VertexSet(n, f, tuple(tuple(c) for c in cycles))


def parse_vertexset(text: bytes | str) -> VertexSet:
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise VertexSetError(f"malformed JSON: {exc}") from None
    return vertexset_from_obj(obj)
