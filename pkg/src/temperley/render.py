"""Deterministic SVG and ASCII drawings of maps with optional decorations.

A tree is drawn as arrows along its out half-edges, a matching as bold
overlay links, a height field as labels at diagonal midpoints.  A single
vertex without coordinates (the wired root of a region) is allowed; its
edges are left out of the picture.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .bijection import Arborescence, PerfectMatching
from .heights import HeightField, MissingCoordinates, to_radians
from .overlay import EDGE, FACE, VERTEX
from .planar_map import PlanarMap

Point = Tuple[Fraction, Fraction]

SCALE = 40
MARGIN = 20


def _positions(m: PlanarMap) -> Dict[Tuple, Point]:
    if not m.coords:
        raise MissingCoordinates("rendering needs vertex coordinates")
    missing = [v for v in m.vertices if m.coords.get(v) is None]
    if len(missing) > 1:
        raise MissingCoordinates(f"vertices {missing} have no coordinates")
    pos: Dict[Tuple, Point] = {(VERTEX, v): m.coords[v] for v in m.vertices if v not in missing}
    for k in range(len(m.edges)):
        a, b = m.edge_endpoints(k)
        if (VERTEX, a) in pos and (VERTEX, b) in pos and a != b:
            pa, pb = pos[(VERTEX, a)], pos[(VERTEX, b)]
            pos[(EDGE, k)] = ((pa[0] + pb[0]) / 2, (pa[1] + pb[1]) / 2)
    for f, walk in enumerate(m.faces):
        pts = [pos.get((VERTEX, m.origin(h))) for h in walk]
        if f == m.outer_face or any(p is None for p in pts):
            continue
        pos[(FACE, f)] = (sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))
    return pos


def _drawable_edges(m: PlanarMap, pos) -> List[int]:
    return [k for k in range(len(m.edges)) if (EDGE, k) in pos]


def _fmt(x) -> str:
    return f"{float(x):.2f}".rstrip("0").rstrip(".")


def render_svg(m: PlanarMap, tree: Optional[Arborescence] = None,
               matching: Optional[PerfectMatching] = None,
               heights: Optional[HeightField] = None) -> str:
    pos = _positions(m)
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    x0, y1 = min(xs), max(ys)
    width = float(max(xs) - x0) * SCALE + 2 * MARGIN
    height = float(y1 - min(ys)) * SCALE + 2 * MARGIN

    def xy(p):
        # flip y so the picture reads like the math
        return _fmt((p[0] - x0) * SCALE + MARGIN), _fmt((y1 - p[1]) * SCALE + MARGIN)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}">',
           '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" '
           'markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>']
    for k in _drawable_edges(m, pos):
        a, b = m.edge_endpoints(k)
        (ax, ay), (bx, by) = xy(pos[(VERTEX, a)]), xy(pos[(VERTEX, b)])
        out.append(f'<line class="edge" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="#999"/>')
    if tree is not None:
        for v, h in tree.out_he:
            k = h >> 1
            if (EDGE, k) not in pos:
                continue
            (ax, ay), (bx, by) = xy(pos[(VERTEX, v)]), xy(pos[(VERTEX, m.target(h))])
            out.append(f'<line class="tree" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                       f'stroke="#c00" stroke-width="2" marker-end="url(#arrow)"/>')
    if matching is not None:
        for a, b in matching.pairs:
            if a not in pos or b not in pos:
                continue
            (ax, ay), (bx, by) = xy(pos[a]), xy(pos[b])
            out.append(f'<line class="match" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                       f'stroke="#06c" stroke-width="5"/>')
    for v in m.vertices:
        if (VERTEX, v) in pos:
            cx, cy = xy(pos[(VERTEX, v)])
            out.append(f'<circle class="vertex" cx="{cx}" cy="{cy}" r="3"/>')
    if heights is not None:
        gpos = heights.geometry.pos
        for did in sorted(heights.heights, key=repr):
            d = heights.diagonals[did]
            p, q = gpos[(VERTEX, d.vertex)], gpos[d.point]
            tx, ty = xy(((p[0] + q[0]) / 2, (p[1] + q[1]) / 2))
            h = heights.heights[did]
            label = str(h) if heights.exact else f"{to_radians(h):.3f}"
            out.append(f'<text class="height" x="{tx}" y="{ty}" font-size="8">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


ARROWS = {(1, 0): ">", (-1, 0): "<", (0, 1): "^", (0, -1): "v"}


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def render_ascii(m: PlanarMap, tree: Optional[Arborescence] = None,
                 matching: Optional[PerfectMatching] = None,
                 heights: Optional[HeightField] = None) -> str:
    """Character picture on a grid of 4 columns and 2 rows per unit.

    Vertices are ``o``, edges ``-``, ``|``, ``/``, ``\\``; a tree edge gets
    an arrowhead at its midpoint, a matched link ``#`` at its midpoint.
    Heights are listed below the picture since they rarely fit inline.
    """
    pos = _positions(m)
    sx, sy = 4, 2
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    x0, y1 = min(xs), max(ys)
    W = int(round((max(xs) - x0) * sx)) + 1
    H = int(round((y1 - min(ys)) * sy)) + 1
    grid = [[" "] * W for _ in range(H)]

    def cell(p):
        return int(round((y1 - p[1]) * sy)), int(round((p[0] - x0) * sx))

    def put(p, ch):
        r, c = cell(p)
        if 0 <= r < H and 0 <= c < W:
            grid[r][c] = ch

    for k in _drawable_edges(m, pos):
        a, b = m.edge_endpoints(k)
        pa, pb = pos[(VERTEX, a)], pos[(VERTEX, b)]
        dx, dy = pb[0] - pa[0], pb[1] - pa[1]
        ch = "-" if dy == 0 else "|" if dx == 0 else "/" if dx * dy > 0 else "\\"
        steps = 4 * max(abs(int(round(dx * sx))), abs(int(round(dy * sy))), 1)
        for i in range(1, steps):
            t = Fraction(i, steps)
            put((pa[0] + t * dx, pa[1] + t * dy), ch)
    if tree is not None:
        for v, h in tree.out_he:
            if (EDGE, h >> 1) not in pos:
                continue
            pa, pb = pos[(VERTEX, v)], pos[(VERTEX, m.target(h))]
            put(pos[(EDGE, h >> 1)], ARROWS.get((_sign(pb[0] - pa[0]), _sign(pb[1] - pa[1])), "*"))
    if matching is not None:
        for a, b in matching.pairs:
            if a in pos and b in pos:
                pa, pb = pos[a], pos[b]
                put(((pa[0] + pb[0]) / 2, (pa[1] + pb[1]) / 2), "#")
    for v in m.vertices:
        if (VERTEX, v) in pos:
            put(pos[(VERTEX, v)], "o")
    lines = ["".join(row).rstrip() for row in grid]
    if heights is not None:
        lines += heights.lines()
    return "\n".join(lines) + "\n"


def render(m: PlanarMap, fmt: str = "svg", **decor) -> str:
    if fmt == "svg":
        return render_svg(m, **decor)
    if fmt in ("ascii", "txt", "text"):
        return render_ascii(m, **decor)
    raise ValueError(f"unknown render format {fmt!r}")
