"""Surface type of a diagram and the admissible (n, f, chi) ranges."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .convert import vertex_count
from .diagram import Diagram, ValidityReport


class TopologyError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceClass:
    connected: bool
    chi: int
    orientable: bool

    @property
    def genus(self) -> int:
        return (2 - self.chi) // 2 if self.orientable else 2 - self.chi

    @property
    def name(self) -> str:
        if not self.connected:
            raise TopologyError("disconnected surfaces have no standard name")
        return f"{self.genus}{'T2' if self.orientable else 'P2'}"

    def __str__(self) -> str:
        return self.name


_NAME = re.compile(r"^([1-9][0-9]*)([TP])2$")


def parse_surface(name: str) -> SurfaceClass:
    """``"3P2"`` -> non-orientable chi=-1; ``"2T2"`` -> orientable chi=-2."""
    m = _NAME.match(name.strip().replace("²", "2"))
    if not m:
        raise TopologyError(f"surface name must look like 2T2 or 3P2, got {name!r}")
    g, kind = int(m.group(1)), m.group(2)
    if kind == "T":
        return SurfaceClass(True, 2 - 2 * g, True)
    return SurfaceClass(True, 2 - g, False)


class _ParityUnionFind:
    """Union-find carrying each element's parity relative to its root."""

    def __init__(self, size):
        self.parent = list(range(size))
        self.parity = [1] * size

    def find(self, x):
        par = 1
        while self.parent[x] != x:
            par *= self.parity[x]
            x = self.parent[x]
        return x, par

    def union(self, x, y, rel) -> bool:
        """Impose ``eps[x] * eps[y] == rel``; False on contradiction."""
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            return px * py == rel
        self.parent[ry] = rx
        self.parity[ry] = px * py * rel
        return True


def tile_orientations(d: Diagram) -> list[int] | None:
    """A choice ``eps[tile]`` with ``eps_p * eps_q == sign`` on every pair, or None.

    Self-pairs of sign -1 make this impossible.  The result is normalised so
    that tile 1 (and each component root) gets +1.
    """
    uf = _ParityUnionFind(d.f + 1)
    for pr in d.pairs:
        if not uf.union(pr.a.tile, pr.b.tile, pr.sign):
            return None
    return [0] + [uf.find(p)[1] for p in range(1, d.f + 1)]


def connectivity(d: Diagram) -> bool:
    parent = list(range(d.f + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pr in d.pairs:
        parent[find(pr.a.tile)] = find(pr.b.tile)
    return len({find(p) for p in range(1, d.f + 1)}) == 1


def euler_characteristic(d: Diagram) -> int:
    return vertex_count(d) - d.n * d.f // 2 + d.f


def classify_surface(d: Diagram) -> SurfaceClass:
    if not connectivity(d):
        raise TopologyError("diagram is disconnected; classify components separately")
    return SurfaceClass(True, euler_characteristic(d), tile_orientations(d) is not None)


PARAM_CONDITIONS = ("f_lower", "f_upper", "n_upper")


def validate_params(n: int, f: int, chi: int) -> ValidityReport:
    """Check the finiteness bounds for tilings by ``f`` congruent ``n``-gons.

    The extra entry ``distinct_lengths_possible`` fails when
    ``f > -4 chi / (n - 4)``, in which case not all edge lengths can differ.
    """
    if n < 7:
        raise TopologyError(f"n must be at least 7, got {n}")
    if chi >= 0:
        raise TopologyError(f"Euler characteristic must be negative, got {chi}")
    if f < 1:
        raise TopologyError(f"f must be positive, got {f}")
    lower = Fraction(-2 * chi, n - 2)
    upper = Fraction(-6 * chi, n - 6)
    n_max = 3 * (2 - chi) if n % 2 else 6 * (1 - chi)
    critical = Fraction(-4 * chi, n - 4)
    bad = []
    if not f > lower:
        bad.append(("f_lower", f"f={f} <= -2chi/(n-2)={lower}"))
    if not f <= upper:
        bad.append(("f_upper", f"f={f} > -6chi/(n-6)={upper}"))
    if not n <= n_max:
        bad.append(("n_upper", f"n={n} > {n_max}"))
    if f > critical:
        bad.append(("distinct_lengths_possible", f"f={f} > -4chi/(n-4)={critical}"))
    return ValidityReport.build(PARAM_CONDITIONS + ("distinct_lengths_possible",), bad)


def params_admissible(n: int, f: int, chi: int) -> bool:
    rep = validate_params(n, f, chi)
    return all(rep.conditions[c] for c in PARAM_CONDITIONS)
