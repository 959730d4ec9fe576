"""Lattice region generators: plane maps with coordinates and a designated (v*, f*).

Square-lattice families are built from a set of lattice points plus a
rule for each missing neighbour: absorbing neighbours become edges to
one wired root vertex, reflecting neighbours are simply absent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .planar_map import PlanarMap, map_from_edges, map_with_root

HALF = Fraction(1, 2)
SQUARE_STEPS = ((1, 0), (0, 1), (-1, 0), (0, -1))


class BadParameters(ValueError):
    pass


@dataclass
class Region:
    family: str
    params: Tuple[int, ...]
    map: PlanarMap
    v_star: int
    f_star: int
    points: Dict[int, Tuple[Fraction, Fraction]]   # vertex -> lattice point
    root: Optional[int] = None
    boundary: Dict[int, List[Tuple[str, Tuple]]] = field(default_factory=dict)

    def vertex_at(self, pt) -> int:
        pt = (Fraction(pt[0]), Fraction(pt[1]))
        for v, p in self.points.items():
            if p == pt:
                return v
        raise KeyError(pt)


def lattice_region(family: str, params, points: Iterable[Tuple], absorbing: Callable[[Tuple], bool],
                   steps=SQUARE_STEPS, directed: Optional[Iterable[Tuple]] = None,
                   embed: Callable = None, corner: Optional[Tuple] = None) -> Region:
    """Undirected (or, with ``directed`` steps, one-way) lattice region.

    ``points`` are lattice points; a missing neighbour ``q`` of ``p`` is
    joined to the root when ``absorbing(q)``, otherwise it reflects.
    ``embed`` maps lattice points to plane coordinates (identity default).
    Without any absorbing neighbour there is no root; then v* is the
    vertex at ``corner`` (or the first point) and f* the outer face.
    """
    pts = sorted({(Fraction(p[0]), Fraction(p[1])) for p in points}, key=lambda p: (p[1], p[0]))
    embed = embed or (lambda p: p)
    if not pts:
        # nothing but the root
        return Region(family, tuple(params), PlanarMap([0], [], {0: []}), 0, 0, {}, 0, {})
    vid = {p: i for i, p in enumerate(pts)}
    root = len(pts)
    out_steps = list(directed) if directed is not None else list(steps)
    edges, root_edges = [], []
    boundary: Dict[int, List[Tuple[str, Tuple]]] = {}
    for p in pts:
        for dx, dy in out_steps:
            q = (p[0] + dx, p[1] + dy)
            if q in vid:
                if directed is not None:
                    edges.append((vid[p], vid[q], 1, None))
                elif vid[p] < vid[q]:
                    edges.append((vid[p], vid[q], 1, 1))
                continue
            kind = "absorbing" if absorbing(q) else "reflecting"
            boundary.setdefault(vid[p], []).append((kind, q))
            if kind == "absorbing":
                ep, eq = embed(p), embed(q)
                d = (eq[0] - ep[0], eq[1] - ep[1])
                root_edges.append((vid[p], 1, None if directed is not None else 1, d))
    coords = {vid[p]: embed(p) for p in pts}
    if not root_edges:
        if not edges and len(pts) == 1:
            m = PlanarMap([0], [], {0: []}, coords=coords)
        else:
            m = map_from_edges(coords, edges, outer=(0, 1))
            m = _with_outer_face(m)
        v_star = vid[(Fraction(corner[0]), Fraction(corner[1]))] if corner else 0
        return Region(family, tuple(params), m, v_star, m.outer_face,
                      {v: p for p, v in vid.items()}, None, boundary)
    coords[root] = None
    m = map_with_root(coords, edges, root, root_edges)
    f_star = m.face_of(m.rotation[root][0])
    return Region(family, tuple(params), m, root, f_star,
                  {v: p for p, v in vid.items()}, root, boundary)


def _with_outer_face(m: PlanarMap) -> PlanarMap:
    """Rebuild ``m`` so its outer face is the unbounded one (negative signed area)."""
    best = None
    for f, walk in enumerate(m.faces):
        area = Fraction(0)
        for h in walk:
            (x1, y1), (x2, y2) = m.coords[m.origin(h)], m.coords[m.target(h)]
            area += x1 * y2 - x2 * y1
        if area < 0:
            best = f
    if best is None or best == m.outer_face:
        return m
    h = m.faces[best][0]
    d = m.dart_of(h)
    token = str(d) if d is not None else f"~{m.dart_of(h ^ 1)}"
    return PlanarMap(m.vertices, m.darts.values(), m.rotation_tokens(), outer=token, coords=m.coords)


def _rect_points(nx: int, ny: int, x0, y0):
    return [(x0 + i, y0 + j) for i in range(nx) for j in range(ny)]


def rect_tree(l: int, m: int) -> Region:
    """l x m grid at half-integer points; v* the lower-left corner, f* outer."""
    _positive(l, m)
    return lattice_region("rect_tree", (l, m), _rect_points(l, m, HALF, HALF),
                          lambda q: False, corner=(HALF, HALF))


def even_odd(l: int, m: int) -> Region:
    _positive(l, m)
    return lattice_region("even_odd", (l, m), _rect_points(l, m, HALF, HALF),
                          lambda q: q[0] == l + HALF)


def even_even(l: int, m: int) -> Region:
    _positive(l, m)
    return lattice_region("even_even", (l, m), _rect_points(l, m, HALF, HALF),
                          lambda q: q[0] == l + HALF or q[1] == m + HALF)


def odd_odd_extra(l: int, m: int) -> Region:
    if l < 1 or m < 2:
        raise BadParameters("need l >= 1 and m >= 2")
    return lattice_region("odd_odd_extra", (l, m), _rect_points(l, m - 1, HALF, 1),
                          lambda q: q[1] == 0 or q[1] == m)


def diamond_region(family: str, params, U: int, W: int, parity: int) -> Region:
    """Points with 0 < u < U, 0 < w < W, u - w = parity mod 2, u = x + y, w = y - x."""
    pts = []
    for u in range(1, U):
        for w in range(1, W):
            if (u - w - parity) % 2 == 0:
                pts.append((Fraction(u - w, 2), Fraction(u + w, 2)))

    def absorbing(q):
        u, w = q[0] + q[1], q[1] - q[0]
        return u <= 0 or u >= U or w <= 0 or w >= W

    return lattice_region(family, params, pts, absorbing)


def diamond(l: int, m: int) -> Region:
    _positive(l, m)
    return diamond_region("diamond", (l, m), 2 * l, 2 * m, 0)


def diamond2(l: int, m: int) -> Region:
    _positive(l, m)
    return diamond_region("diamond2", (l, m), 2 * l, 2 * m, 1)


def diamond_intermediate(l: int, m: int, parity: int) -> Region:
    _positive(l, m)
    return diamond_region(f"diamond_mid{parity}", (l, m), 2 * l + 1, 2 * m, parity)


def triangle(m: int) -> Region:
    """Staircase: 1 <= y < x <= m; absorbing on y = 0 and x = y, reflecting at x = m."""
    if m < 1:
        raise BadParameters("m must be positive")
    pts = [(x, y) for x in range(1, m + 1) for y in range(1, x)]
    return lattice_region("triangle", (m,), pts, lambda q: q[1] == 0 or q[0] == q[1])


def aztec_quarter(m: int) -> Region:
    """1 <= y < x <= m - 1 with every missing neighbour absorbing."""
    if m < 2:
        raise BadParameters("m must be at least 2")
    pts = [(x, y) for x in range(1, m) for y in range(1, x)]
    return lattice_region("aztec_quarter", (m,), pts, lambda q: True)


# Eisenstein coordinates (a, b) mean a + b e^(i pi / 3); drawn affinely as (a + b/2, b).
HEX_OUT = ((1, 0), (-1, 1), (0, -1))       # v + 1, v + omega, v + omega^-1


def hex_embed(p):
    return (p[0] + p[1] / 2, p[1])


def hex_T(m: int) -> Region:
    """Side-m Eisenstein triangle, darts toward v+1, v+w, v+w^-1, wired root."""
    if m < 1:
        raise BadParameters("m must be positive")
    pts = [(a, b) for a in range(m + 1) for b in range(m + 1 - a)]
    return lattice_region("hex_T", (m,), pts, lambda q: True, directed=HEX_OUT, embed=hex_embed)


def hex_patch(r: int) -> Region:
    """Hexagonal patch of the directed triangular lattice with an outer vertex."""
    if r < 0:
        raise BadParameters("radius must be nonnegative")
    pts = [(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1) if abs(a + b) <= r]
    return lattice_region("hex_patch", (r,), pts, lambda q: True, directed=HEX_OUT, embed=hex_embed)


def _positive(*xs):
    if any(x < 1 for x in xs):
        raise BadParameters("parameters must be positive")


FAMILIES = {
    "rect_tree": (rect_tree, 2),
    "even_odd": (even_odd, 2),
    "even_even": (even_even, 2),
    "odd_odd_extra": (odd_odd_extra, 2),
    "diamond": (diamond, 2),
    "diamond2": (diamond2, 2),
    "triangle": (triangle, 1),
    "aztec_quarter": (aztec_quarter, 1),
    "hex_T": (hex_T, 1),
    "hex_patch": (hex_patch, 1),
}

# family -> closed-form name (see closed_form.FORMULAS)
FORMULA_OF = {
    "rect_tree": "odd_odd_corner",
    "even_odd": "even_odd",
    "even_even": "even_even",
    "odd_odd_extra": "odd_odd_extra",
    "diamond": "diamond",
    "diamond2": "diamond2",
    "triangle": "staircase",
    "aztec_quarter": "aztec_quarter",
    "hex_T": "hex",
}


def generate(family: str, l: Optional[int] = None, m: Optional[int] = None) -> Region:
    if family not in FAMILIES:
        raise BadParameters(f"unknown family {family!r}")
    fn, arity = FAMILIES[family]
    if arity == 2:
        if l is None or m is None:
            raise BadParameters(f"{family} needs l and m")
        return fn(l, m)
    arg = m if m is not None else l
    if arg is None:
        raise BadParameters(f"{family} needs m")
    return fn(arg)
