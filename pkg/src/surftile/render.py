"""SVG chord-diagram schematic of a diagram.

Tiles are drawn as regular polygons side by side with edge 0 at the top and
labels running counterclockwise; each pair is a chord between edge midpoints,
solid when opposing and dashed when twisted.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .diagram import Diagram

RADIUS = 100.0
GAP = 60.0
MARGIN = 40.0


def _corner_xy(cx, cy, n, i):
    ang = math.pi / 2 + 2 * math.pi * i / n
    return cx + RADIUS * math.cos(ang), cy - RADIUS * math.sin(ang)


def _mid_xy(cx, cy, n, i, shrink=0.92):
    (x0, y0), (x1, y1) = _corner_xy(cx, cy, n, i), _corner_xy(cx, cy, n, i + 1)
    mx, my = (x0 + x1) / 2, (y0 + y1) / 2
    return cx + shrink * (mx - cx), cy + shrink * (my - cy)


def _fmt(v):
    return f"{v:.2f}"


def render_svg(d: Diagram, title: str | None = None) -> str:
    n, f = d.n, d.f
    width = 2 * MARGIN + f * 2 * RADIUS + (f - 1) * GAP
    height = 2 * MARGIN + 2 * RADIUS + (30 if title else 0)
    top = MARGIN + (30 if title else 0)
    centers = [(MARGIN + RADIUS + p * (2 * RADIUS + GAP), top + RADIUS) for p in range(f)]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
           f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
           '<rect width="100%" height="100%" fill="white"/>']
    if title:
        out.append(f'<text x="{_fmt(width / 2)}" y="{_fmt(MARGIN)}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="16">{escape(title)}</text>')
    for p, (cx, cy) in enumerate(centers, start=1):
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (_corner_xy(cx, cy, n, i) for i in range(n)))
        out.append(f'<polygon points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>')
        out.append(f'<text x="{_fmt(cx)}" y="{_fmt(cy + 5)}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="14">T{p}</text>')
        for i in range(n):
            x, y = _corner_xy(cx, cy, n, i)
            lx, ly = cx + 1.12 * (x - cx), cy + 1.12 * (y - cy)
            out.append(f'<text x="{_fmt(lx)}" y="{_fmt(ly + 4)}" text-anchor="middle" '
                       f'font-family="sans-serif" font-size="11">{i}</text>')
    for pr in d.pairs:
        ca, cb = centers[pr.a.tile - 1], centers[pr.b.tile - 1]
        x0, y0 = _mid_xy(*ca, n, pr.a.label)
        x1, y1 = _mid_xy(*cb, n, pr.b.label)
        # bend chords toward the figure centre so same-tile chords stay inside their tile
        if pr.a.tile == pr.b.tile:
            qx, qy = ca
        else:
            qx, qy = (x0 + x1) / 2, min(y0, y1) - 0.35 * abs(x1 - x0)
        dash = ' stroke-dasharray="6,4"' if pr.sign < 0 else ""
        out.append(f'<path d="M {_fmt(x0)} {_fmt(y0)} Q {_fmt(qx)} {_fmt(qy)} {_fmt(x1)} {_fmt(y1)}" '
                   f'fill="none" stroke="black" stroke-width="1.2"{dash}/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
