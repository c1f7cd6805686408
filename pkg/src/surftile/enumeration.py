"""Isomorph-free enumeration of tilings by ``f`` congruent ``n``-gons.

The search always matches the least unmatched edge, so the pairs chosen so
far are a prefix of the final sorted pair list.  That makes the orderly prune
sound: if some relabeling sends the decided pairs to a lexicographically
smaller list, no completion can be its own canonical form.

Vertices are tracked while pairs are added.  Each pair glues two corner pairs
together, so the corners form paths that close into vertex cycles; a cycle of
fewer than three corners is rejected on the spot, and when a target surface
fixes the vertex count the number of cycles still reachable is bounded.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .convert import VertexSet, diagram_to_vertexset, vertexset_to_obj
from .diagram import Diagram, DiagramError, diagram_to_obj, group_edge_perms
from .geomfilter import (FeasibilityVerdict, build_angle_system, check_positive_solution,
                         edge_class_partition, edge_classes)
from .topology import SurfaceClass, classify_surface, parse_surface, params_admissible

log = logging.getLogger(__name__)

GENERAL = "general"
ORIENTABLE = "orientable"


class EnumerationError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """Search stopped early.

    ``completed`` lists the first-level branches ``(partner, sign)`` of edge 0
    whose subtrees were searched exhaustively; ``records`` holds everything
    they produced.
    """

    def __init__(self, message, completed, records):
        super().__init__(message)
        self.completed = completed
        self.records = records


@dataclass(frozen=True)
class EnumSpec:
    n: int
    f: int
    mode: str = GENERAL
    split: int | None = None
    target: str | None = None
    require_angle_feasible: bool = True
    breakdown: str = "edge_lengths"

    def __post_init__(self):
        if self.n < 3 or self.f < 1:
            raise EnumerationError(f"need n >= 3 and f >= 1, got n={self.n}, f={self.f}")
        if self.mode == GENERAL:
            if self.split is not None:
                raise EnumerationError("split is only used in orientable mode")
        elif self.mode == ORIENTABLE:
            s = self.split
            if s is None or not (0 <= s <= self.f) or 2 * s < self.f:
                raise EnumerationError(f"orientable mode needs f/2 <= split <= f, got {s}")
        else:
            raise EnumerationError(f"unknown mode {self.mode!r}")
        if self.breakdown not in ("edge_lengths", "none"):
            raise EnumerationError(f"unknown breakdown {self.breakdown!r}")
        if self.target is not None:
            surf = parse_surface(self.target)
            if self.mode == ORIENTABLE and not surf.orientable:
                raise EnumerationError(f"orientable mode cannot produce {self.target}")
            if self.n >= 7 and not params_admissible(self.n, self.f, surf.chi):
                raise EnumerationError(
                    f"no tilings of {self.target} by {self.f} congruent {self.n}-gons "
                    f"(parameter bounds violated)")

    @property
    def surface(self) -> SurfaceClass | None:
        return parse_surface(self.target) if self.target else None

    @property
    def target_vertices(self) -> int | None:
        if self.target is None:
            return None
        return self.surface.chi + self.n * self.f // 2 - self.f


@dataclass(frozen=True)
class TilingRecord:
    diagram: Diagram
    vertexset: VertexSet
    surface: SurfaceClass
    edge_classes: int
    angle: FeasibilityVerdict
    mode: str = GENERAL
    split: int | None = None

    def to_obj(self) -> dict:
        return {
            "surface": self.surface.name,
            "chi": self.surface.chi,
            "orientable": self.surface.orientable,
            "mode": self.mode,
            "split": self.split,
            "edge_classes": self.edge_classes,
            "angle_feasible": self.angle.feasible,
            "angle_witness": self.angle.witness_strings(),
            "diagram": diagram_to_obj(self.diagram),
            "vertices": vertexset_to_obj(self.vertexset)["vertices"],
        }


def make_record(d: Diagram, mode: str = GENERAL, split: int | None = None) -> TilingRecord:
    vs = diagram_to_vertexset(d)
    return TilingRecord(d, vs, classify_surface(d), len(edge_classes(d)),
                        check_positive_solution(build_angle_system(vs)), mode, split)


# -- the search ---------------------------------------------------------------


class _Search:
    """Backtracking over pairings of the least unmatched edge."""

    def __init__(self, spec: EnumSpec, budget: int | None = None):
        self.spec = spec
        n, f = spec.n, spec.f
        self.N = N = n * f
        self.ends = [(e, e - e % n + (e % n + 1) % n) for e in range(N)]
        split = spec.split if spec.mode == ORIENTABLE else None
        perms = group_edge_perms(n, f, split)
        self.perms = [p for p in perms if any(p[e] != e for e in range(N))]
        self.vt = spec.target_vertices
        surf = spec.surface
        self.want_orientable = surf.orientable if surf else None
        if spec.mode == ORIENTABLE:
            side = [e // n < split for e in range(N)]
            self.sign_choices = [[(1,) if side[a] == side[b] else (-1,) for b in range(N)]
                                 for a in range(N)]
            self.track_parity = False
        else:
            self.sign_choices = [[(-1, 1)] * N for _ in range(N)]
            self.track_parity = bool(self.want_orientable)
        self.budget = budget
        self.nodes = 0
        self.leaves = 0

    # state: partner, sign, other, size, counters
    def initial_state(self):
        N = self.N
        return {
            "partner": [-1] * N,
            "sign": [0] * N,
            "other": list(range(N)),
            "size": [1] * N,
            "closed": 0,
            "big": 0,
            "small": N,
            "parity": list(range(self.spec.f)) if self.track_parity else None,
            "eps": [1] * self.spec.f if self.track_parity else None,
            "keys": [],
        }

    def _apply(self, st, a, b, s):
        """Apply pair (a, b, s) to a copy of ``st``; return the copy or None."""
        other = st["other"][:]
        size = st["size"][:]
        closed, big, small = st["closed"], st["big"], st["small"]
        sa, ea = self.ends[a]
        sb, eb = self.ends[b]
        links = ((sa, eb), (ea, sb)) if s > 0 else ((sa, sb), (ea, eb))
        for x, y in links:
            if other[x] == y:
                L = size[x]
                if L < 3:
                    return None
                closed += 1
                if L >= 3:
                    big -= 1
            else:
                ox, oy = other[x], other[y]
                lx, ly = size[x], size[y]
                if lx >= 3:
                    big -= 1
                else:
                    small -= lx
                if ly >= 3:
                    big -= 1
                else:
                    small -= ly
                L = lx + ly
                other[ox] = oy
                other[oy] = ox
                size[ox] = size[oy] = L
                if L >= 3:
                    big += 1
                else:
                    small += L
        vt = self.vt
        if vt is not None:
            if closed > vt or closed + big + small // 3 < vt:
                return None
        parity = eps = None
        if self.track_parity:
            parity = st["parity"][:]
            eps = st["eps"][:]
            n = self.spec.n
            p, q = a // n, b // n
            rp, rq = parity[p], parity[q]
            if rp == rq:
                if eps[p] * eps[q] != s:
                    return None
            else:
                flip = eps[p] * eps[q] * s
                for t in range(self.spec.f):
                    if parity[t] == rq:
                        parity[t] = rp
                        eps[t] *= flip
        N = self.N
        keys = st["keys"] + [(a * N + b) * 2 + (s > 0)]
        if not self._canonical(keys):
            return None
        partner = st["partner"][:]
        sign = st["sign"][:]
        partner[a], partner[b] = b, a
        sign[a] = sign[b] = s
        return {"partner": partner, "sign": sign, "other": other, "size": size,
                "closed": closed, "big": big, "small": small, "parity": parity,
                "eps": eps, "keys": keys}

    def _canonical(self, keys):
        N = self.N
        pairs = [(k >> 1, k & 1) for k in keys]
        pairs = [(ab // N, ab % N, sb) for ab, sb in pairs]
        for g in self.perms:
            img = []
            for a, b, sb in pairs:
                ga, gb = g[a], g[b]
                img.append((ga * N + gb if ga < gb else gb * N + ga) * 2 + sb)
            img.sort()
            if img < keys:
                return False
        return True

    def branches(self, st):
        partner = st["partner"]
        a = partner.index(-1)
        choices = self.sign_choices[a]
        for b in range(a + 1, self.N):
            if partner[b] < 0:
                for s in choices[b]:
                    yield a, b, s

    def run(self, st) -> Iterator[tuple[list[int], list[int]]]:
        """Yield ``(partner, sign)`` of every completed canonical matching
        below ``st`` that passes the combinatorial prunes."""
        stack = [st]
        while stack:
            cur = stack.pop()
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise BudgetExceeded("node budget exhausted", [], [])
            if len(cur["keys"]) * 2 == self.N:
                if self.vt is not None and cur["closed"] != self.vt:
                    continue
                self.leaves += 1
                yield cur["partner"], cur["sign"]
                continue
            children = []
            for a, b, s in self.branches(cur):
                nxt = self._apply(cur, a, b, s)
                if nxt is not None:
                    children.append(nxt)
            stack.extend(reversed(children))

    def first_level(self):
        st = self.initial_state()
        if self.N % 2 or self.N == 0:
            return []
        out = []
        for a, b, s in self.branches(st):
            nxt = self._apply(st, a, b, s)
            if nxt is not None:
                out.append(((b, s), nxt))
        return out


def _leaf_record(spec: EnumSpec, partner, sign) -> TilingRecord | None:
    n, f = spec.n, spec.f
    if f > 1:
        seen = {0}
        frontier = [0]
        tiles_adj = {}
        for e, o in enumerate(partner):
            tiles_adj.setdefault(e // n, set()).add(o // n)
        while frontier:
            t = frontier.pop()
            for u in tiles_adj[t]:
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
        if len(seen) != f:
            return None
    d = Diagram.from_arrays(n, f, partner, sign)
    surf = classify_surface(d)
    if spec.target is not None and surf.name != spec.target:
        return None
    vs = diagram_to_vertexset(d)
    verdict = check_positive_solution(build_angle_system(vs))
    if spec.require_angle_feasible and not verdict.feasible:
        return None
    return TilingRecord(d, vs, surf, len(edge_classes(d)), verdict, spec.mode, spec.split)


def _run_subtree(args):
    spec, budget, branch = args
    search = _Search(spec, budget)
    for key, st in search.first_level():
        if key == branch:
            recs = [r for r in (_leaf_record(spec, p, s) for p, s in search.run(st)) if r]
            return branch, recs, search.nodes
    return branch, [], 0


def enumerate_tilings(spec: EnumSpec, workers: int = 1, budget: int | None = None) -> list[TilingRecord]:
    """Every tiling matching ``spec``, one per equivalence class, sorted by
    canonical diagram.  ``budget`` caps search nodes per first-level subtree."""
    search = _Search(spec, budget)
    branches = [key for key, _ in search.first_level()]
    results: dict = {}
    failed = []
    jobs = [(spec, budget, br) for br in branches]
    if workers <= 1:
        outcomes = map(_safe_subtree, jobs)
        for out in outcomes:
            _collect(out, results, failed)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for out in pool.map(_safe_subtree, jobs):
                _collect(out, results, failed)
    records = sorted((r for br in branches if br in results for r in results[br]),
                     key=lambda r: r.diagram.key)
    if failed:
        raise BudgetExceeded(f"budget exceeded in {len(failed)} of {len(branches)} subtrees",
                             [br for br in branches if br in results], records)
    return records


def _safe_subtree(job):
    try:
        return _run_subtree(job)
    except BudgetExceeded:
        return job[2], None, None


def _collect(out, results, failed):
    branch, recs, _nodes = out
    if recs is None:
        failed.append(branch)
    else:
        results[branch] = recs


# -- count tables -------------------------------------------------------------


@dataclass
class CountTable:
    """Tiling counts keyed by ``(surface, n, mode, split)``; each value holds
    counts indexed by number of edge lengths ``1..n`` (slot 0 unused)."""

    rows: dict[tuple[str, int, str, int | None], list[int]] = field(default_factory=dict)

    def add(self, key, lengths: int, n: int):
        row = self.rows.setdefault(key, [0] * (n + 1))
        row[lengths] += 1

    def total(self, key) -> int:
        return sum(self.rows[key])

    def breakdown(self, key) -> dict[int, int]:
        """Non-zero counts by number of edge lengths, descending."""
        row = self.rows[key]
        return {k: row[k] for k in range(len(row) - 1, 0, -1) if row[k]}

    def to_csv(self) -> str:
        """CSV with edge-length columns in descending order (most lengths first)."""
        if not self.rows:
            return "surface,n,mode,split,total\n"
        width = max(len(r) for r in self.rows.values()) - 1
        head = ["surface", "n", "mode", "split"] + [f"len_{k}" for k in range(width, 0, -1)] + ["total"]
        lines = [",".join(head)]
        for key in sorted(self.rows, key=lambda k: (k[0], k[1], k[2], -(k[3] or 0))):
            surf, n, mode, split = key
            row = self.rows[key] + [0] * (width + 1 - len(self.rows[key]))
            cells = [surf, str(n), mode, "" if split is None else str(split)]
            cells += [str(row[k]) for k in range(width, 0, -1)] + [str(sum(row))]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def table_from_records(records: Iterable[TilingRecord], table: CountTable | None = None) -> CountTable:
    table = table or CountTable()
    for r in records:
        table.add((r.surface.name, r.diagram.n, r.mode, r.split), r.edge_classes, r.diagram.n)
    return table


def count_table(spec: EnumSpec, workers: int = 1, budget: int | None = None) -> CountTable:
    table = CountTable()
    if spec.target is not None:
        key = (spec.target, spec.n, spec.mode, spec.split)
        table.rows[key] = [0] * (spec.n + 1)
    return table_from_records(enumerate_tilings(spec, workers, budget), table)


# -- brute-force oracle -------------------------------------------------------

ORACLE_LIMIT = {GENERAL: 16, ORIENTABLE: 18}


def _all_matchings(m: int) -> np.ndarray:
    """Every perfect matching of ``0..m-1`` as a partner array (one row each)."""
    if m == 0:
        return np.zeros((1, 0), dtype=np.int16)
    out = []

    def rec(free, partner):
        if not free:
            out.append(partner[:])
            return
        a = free[0]
        for k in range(1, len(free)):
            b = free[k]
            partner[a], partner[b] = b, a
            rec(free[1:k] + free[k + 1:], partner)

    rec(list(range(m)), [0] * m)
    return np.array(out, dtype=np.int16)


def _cycle_data(nxt: np.ndarray):
    """Vectorised cycle structure of a batch of permutations (rows).

    Returns the number of cycles per row and the minimum cycle length.
    """
    B, M = nxt.shape
    rows = np.arange(B)[:, None]
    # orbit minimum by pointer doubling
    orbit_min = np.broadcast_to(np.arange(M), (B, M)).copy()
    jump = nxt.copy()
    steps = 1
    while steps < M:
        orbit_min = np.minimum(orbit_min, orbit_min[rows, jump])
        jump = jump[rows, jump]
        steps *= 2
    is_rep = orbit_min == np.arange(M)
    ncycles = is_rep.sum(axis=1)
    # cycle length: count of elements sharing the same orbit minimum
    lengths = np.bincount((rows * M + orbit_min).ravel(), minlength=B * M).reshape(B, M)
    minlen = np.where(is_rep, lengths, M + 1).min(axis=1)
    return ncycles, minlen


def oracle_enumerate(spec: EnumSpec, chunk: int = 1 << 15) -> list[TilingRecord]:
    """Brute force over every labeled (signed) matching, no symmetry breaking.

    Vertex counts and degrees come from a vectorised successor permutation;
    surviving labeled diagrams are deduplicated by the minimum encoding over
    the relabeling group, and only then classified and angle-checked, with the
    angle LP decided by floating-point linear programming.
    """
    from scipy.optimize import linprog

    n, f = spec.n, spec.f
    N = n * f
    limit = ORACLE_LIMIT[spec.mode]
    if N > limit:
        raise BudgetExceeded(f"oracle limited to n*f <= {limit} in {spec.mode} mode", [], [])
    if N % 2:
        return []
    match = _all_matchings(N).astype(np.int64)
    e_idx = np.arange(N)
    base = e_idx - e_idx % n
    prev_edge = base + (e_idx % n - 1) % n  # incoming edge of the + corner
    split = spec.split if spec.mode == ORIENTABLE else None
    tiles = e_idx // n
    if spec.mode == ORIENTABLE:
        side = tiles < split
        sign_rows = [None]
    else:
        sign_rows = list(itertools.product((-1, 1), repeat=N // 2))
    perms = np.array(group_edge_perms(n, f, split), dtype=np.int64)
    vt = spec.target_vertices
    found = []
    for srow in sign_rows:
        for start in range(0, len(match), chunk):
            P = match[start:start + chunk]
            B = len(P)
            rows = np.arange(B)[:, None]
            if spec.mode == ORIENTABLE:
                S = np.where(side[None, :] == side[P], 1, -1)
            else:
                # pair k (by order of its smaller edge) gets sign srow[k]
                first = P > e_idx[None, :]
                order = np.cumsum(first, axis=1) - 1
                pair_no = np.where(first, order, order[rows, P])
                S = np.array(srow)[pair_no]
            # successor on signed corners 2*c + neg
            nxt = np.empty((B, 2 * N), dtype=np.int64)
            for neg in (0, 1):
                inc = e_idx if neg else prev_edge
                o = P[:, inc]
                s = (1 if not neg else -1) * S[:, inc]
                tgt = np.where(s > 0, o, (o - o % n) + (o % n + 1) % n)
                nxt[:, 2 * e_idx + neg] = 2 * tgt + (s < 0)
            ncyc, minlen = _cycle_data(nxt)
            ok = minlen >= 3
            if vt is not None:
                ok &= ncyc // 2 == vt
            if f > 1:
                adj = np.zeros((B, f, f), dtype=bool)
                adj[np.repeat(np.arange(B), N), np.tile(tiles, B), (P // n).ravel()] = True
                reach = adj | np.eye(f, dtype=bool)[None]
                for _ in range(f):
                    reach = (reach.astype(np.int32) @ reach.astype(np.int32)) > 0
                ok &= reach[:, 0, :].all(axis=1)
            if not ok.any():
                continue
            P, S = P[ok], S[ok]
            B = len(P)
            codes = np.empty((len(perms), B, N), dtype=np.int64)
            for gi, g in enumerate(perms):
                img_p = np.empty_like(P)
                img_s = np.empty_like(S)
                img_p[:, g] = g[P]
                img_s[:, g] = S
                # encode every edge; only comparisons matter and they agree with pair lists
                codes[gi] = img_p * 2 + (img_s > 0)
            best = codes[0]
            for gi in range(1, len(perms)):
                cand = codes[gi]
                diff = cand != best
                first_diff = np.where(diff.any(axis=1), diff.argmax(axis=1), 0)
                better = cand[np.arange(B), first_diff] < best[np.arange(B), first_diff]
                best = np.where(better[:, None], cand, best)
            found.append(np.unique(best, axis=0))
    keys = np.unique(np.concatenate(found), axis=0).tolist() if found else []
    records = []
    lp_cache: dict = {}
    for key in keys:
        partner = [k >> 1 for k in key]
        sign = [1 if k & 1 else -1 for k in key]
        d = Diagram.from_arrays(n, f, partner, sign)
        vs = diagram_to_vertexset(d)
        surf = classify_surface(d)
        if spec.target is not None and surf.name != spec.target:
            continue
        rows = tuple(sorted(set(build_angle_system(vs).rows)))
        if rows not in lp_cache:
            m = len(rows)
            # variables x (n), t ; maximize t s.t. A x = 1, x_i - t >= 0
            A_eq = np.array([list(r) + [0.0] for r in rows], dtype=float)
            A_ub = np.hstack([-np.eye(n), np.ones((n, 1))])
            res = linprog(c=np.r_[np.zeros(n), -1.0], A_ub=A_ub, b_ub=np.zeros(n),
                          A_eq=A_eq, b_eq=np.ones(m),
                          bounds=[(None, None)] * n + [(None, 1.0)], method="highs")
            lp_cache[rows] = bool(res.status == 0 and -res.fun > 1e-9)
        feasible = lp_cache[rows]
        if spec.require_angle_feasible and not feasible:
            continue
        ncls = len(edge_class_partition(n, [(a % n, partner[a] % n) for a in range(N)]))
        verdict = FeasibilityVerdict(feasible)
        records.append(TilingRecord(d, vs, surf, ncls, verdict, spec.mode, spec.split))
    records.sort(key=lambda r: r.diagram.key)
    return records
