"""Height functions on facet diagonals, and winding of tree paths.

Angles are measured in quarter-turns.  When every direction involved is
axis-aligned or diagonal the values are exact Fractions; otherwise they
are floats (compare with a 1e-9 tolerance).

Geometry of the overlay drawing: vertex-nodes sit at the vertex
coordinates, edge-nodes at edge midpoints, bounded face-nodes at the mean
of their corners.  The outer face-node is extended: each outer half-edge
``g`` gets an attachment point just outside its midpoint, ``('a', g)``,
and every outer facet draws one diagonal to each of the attachment points
of its two boundary edges.  The cut from ``v*`` to ``f*`` runs from ``v*``
out through a corner point ``('c', g)``; the diagonal to it is split into
two copies, one on each side of the cut.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Tuple, Union

from .bijection import Arborescence, PerfectMatching
from .overlay import EDGE, FACE, VERTEX, OverlayGraph
from .planar_map import PlanarMap

Angle = Union[Fraction, float]
FULL = 4        # quarter-turns in a full turn
TOL = 1e-9


class HeightError(ValueError):
    pass


class MissingCoordinates(HeightError):
    pass


class CutTopologyUnsupported(HeightError):
    pass


class HeightInconsistency(HeightError):
    pass


class NotOnTree(HeightError):
    pass


def exact_angle(vec) -> Optional[Fraction]:
    """Angle of ``vec`` in quarter-turns if it is a multiple of an eighth turn."""
    x, y = Fraction(vec[0]), Fraction(vec[1])
    if x == 0 and y == 0:
        raise HeightError("zero-length direction")
    if y == 0:
        return Fraction(0) if x > 0 else Fraction(2)
    if x == 0:
        return Fraction(1) if y > 0 else Fraction(3)
    if abs(x) == abs(y):
        return {(1, 1): Fraction(1, 2), (-1, 1): Fraction(3, 2),
                (-1, -1): Fraction(5, 2), (1, -1): Fraction(7, 2)}[(x > 0) - (x < 0), (y > 0) - (y < 0)]
    return None


def float_angle(vec) -> float:
    a = math.atan2(float(vec[1]), float(vec[0])) / (math.pi / 2)
    return a % FULL


def angle(vec, exact: bool) -> Angle:
    if exact:
        a = exact_angle(vec)
        if a is None:
            raise HeightError("non-lattice direction in exact mode")
        return a
    return float_angle(vec)


def ccw(a: Angle, b: Angle) -> Angle:
    """Counterclockwise rotation from direction a to b, in [0, 4)."""
    d = (b - a) % FULL
    if not isinstance(d, Fraction) and abs(d - FULL) < TOL:
        d = 0.0
    return d


def is_zero(x: Angle) -> bool:
    return x == 0 if isinstance(x, Fraction) else abs(x) < TOL


def to_radians(x: Angle) -> float:
    return float(x) * math.pi / 2


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


@dataclass(frozen=True)
class Diagonal:
    id: Tuple
    facet: int               # half-edge g: corner at origin(g), face on the left of g
    vertex: int
    point: Tuple             # ('f', face) | ('a', g) | ('c', g)
    copy: int = 0            # 0/1 for the two halves of the split diagonal
    arg: Angle = 0


@dataclass
class OverlayGeometry:
    map: PlanarMap
    pos: Dict[Tuple, Tuple[Fraction, Fraction]]
    diagonals: Dict[Tuple, Diagonal]
    by_facet: Dict[int, List[Tuple]]
    outer_normal: Dict[int, Tuple[Fraction, Fraction]]
    split_facet: Optional[int]
    exact: bool


def _left_normal(m: PlanarMap, g: int, pos) -> Tuple[Fraction, Fraction]:
    dx, dy = _sub(pos[("v", m.target(g))], pos[("v", m.origin(g))])
    return (-dy, dx)


def overlay_geometry(m: PlanarMap, v_star: int, f_star: int) -> OverlayGeometry:
    if not m.coords or any(v not in m.coords for v in m.vertices):
        raise MissingCoordinates("heights need coordinates for every vertex")
    if f_star != m.outer_face or not m.is_incident(v_star, f_star):
        raise CutTopologyUnsupported(
            "supported cut: f* is the outer face and v* lies on its boundary")
    pos: Dict[Tuple, Tuple[Fraction, Fraction]] = {}
    for v in m.vertices:
        pos[(VERTEX, v)] = m.coords[v]
    for k in range(len(m.edges)):
        a, b = pos[(VERTEX, m.origin(2 * k))], pos[(VERTEX, m.origin(2 * k + 1))]
        pos[(EDGE, k)] = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    for f, walk in enumerate(m.faces):
        if f == f_star:
            continue
        pts = [pos[(VERTEX, m.origin(h))] for h in walk]
        pos[(FACE, f)] = (sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))
    normal = {}
    for g in range(m.num_halfedges):
        if m.face_of(g) == f_star:
            n = _left_normal(m, g, pos)
            normal[g] = n
            mid = pos[(EDGE, g >> 1)]
            pos[("a", g)] = (mid[0] + n[0] / 2, mid[1] + n[1] / 2)
    split = min((g for g in range(m.num_halfedges)
                 if m.origin(g) == v_star and m.face_of(g) == f_star), default=None)
    if split is None:
        raise CutTopologyUnsupported("v* has no corner on the outer face")

    diagonals: Dict[Tuple, Diagonal] = {}
    by_facet: Dict[int, List[Tuple]] = {}

    def add(g, point, copy=0):
        did = (g, point[0], point[1], copy)
        diagonals[did] = Diagonal(did, g, m.origin(g), point, copy)
        by_facet.setdefault(g, []).append(did)

    for g in range(m.num_halfedges):
        if m.face_of(g) != f_star:
            add(g, (FACE, m.face_of(g)))
            continue
        p = m.prev_he(g)
        add(g, ("a", g))
        if p != g:
            add(g, ("a", p))
        if g == split:
            v = pos[(VERTEX, v_star)]
            n1, n2 = normal[g], normal[p]
            s = (n1[0] + n2[0], n1[1] + n2[1])
            if s == (0, 0):
                d = _sub(pos[(VERTEX, m.target(g))], v)
                s = (-d[0], -d[1])
            pos[("c", g)] = (v[0] + s[0] / 2, v[1] + s[1] / 2)
            add(g, ("c", g), 0)
            add(g, ("c", g), 1)

    exact = all(exact_angle(_sub(pos[d.point], pos[(VERTEX, d.vertex)])) is not None
                for d in diagonals.values())
    for did, d in list(diagonals.items()):
        a = angle(_sub(pos[d.point], pos[(VERTEX, d.vertex)]), exact)
        diagonals[did] = Diagonal(d.id, d.facet, d.vertex, d.point, d.copy, a)
    return OverlayGeometry(m, pos, diagonals, by_facet, normal, split, exact)


@dataclass
class HeightField:
    geometry: OverlayGeometry
    heights: Dict[Tuple, Angle]
    base: Tuple
    v_star: int
    f_star: int

    @property
    def exact(self) -> bool:
        return self.geometry.exact

    @property
    def diagonals(self) -> Dict[Tuple, Diagonal]:
        return self.geometry.diagonals

    def facet_diagonal(self, g: int, near: Optional[int] = None) -> Tuple:
        """A representative diagonal of facet g (never a split copy).

        On an outer facet, ``near`` picks the diagonal drawn to the
        attachment point of boundary half-edge ``near``; this matters only
        at v*, where the facet's diagonals lie on both sides of the cut.
        """
        ids = self.geometry.by_facet[g]
        if near is not None:
            for d in ids:
                if d[1] == "a" and d[2] == near:
                    return d
        plain = [d for d in ids if d[1] != "c"]
        return (plain or ids)[0]

    def facet_height(self, g: int) -> Angle:
        return self.heights[self.facet_diagonal(g)]

    def radians(self, did) -> float:
        return to_radians(self.heights[did])

    def lines(self) -> List[str]:
        out = []
        for did in sorted(self.heights, key=repr):
            h = self.heights[did]
            if self.exact:
                val = str(h)
            else:
                val = f"{to_radians(h):.12g}"
            out.append(f"facet {did[0]} {did[1]}:{did[2]}#{did[3]} {val}")
        return out


def _chains(geo: OverlayGeometry, partner: Dict, v_star: int):
    """Local constraints: (d, d', delta) with h(d') = h(d) + delta."""
    m, pos, exact = geo.map, geo.pos, geo.exact
    around: Dict[Tuple, List[Tuple[Tuple, Angle]]] = {}
    for d in geo.diagonals.values():
        v = (VERTEX, d.vertex)
        around.setdefault(v, []).append((d.id, angle(_sub(pos[d.point], pos[v]), exact)))
        if d.point[0] != "c":
            around.setdefault(d.point, []).append(
                (d.id, angle(_sub(pos[v], pos[d.point]), exact)))
    out = []
    for x, rays in around.items():
        if x == (VERTEX, v_star):
            c = geo.split_facet
            cut = angle(_sub(pos[("c", c)], pos[x]), exact)
        elif x[0] == "a":
            cut = angle(geo.outer_normal[x[1]], exact)
        else:
            y = partner.get(x)
            if y is None or y[0] != EDGE:
                raise HeightError(f"node {x} is not matched to an edge-node")
            cut = angle(_sub(pos[y], pos[x]), exact)
        keyed = []
        for did, a in rays:
            off = ccw(cut, a)
            if did[1] == "c":
                off = 0 if did[3] == 0 else FULL
            elif is_zero(off):
                raise HeightError(f"diagonal {did} lies along the cut at {x}")
            keyed.append((off, did))
        keyed.sort(key=lambda t: t[0])
        for (o1, d1), (o2, d2) in zip(keyed, keyed[1:]):
            out.append((d1, d2, o2 - o1))
    return out


def compute_heights(mt: PerfectMatching, h: OverlayGraph) -> HeightField:
    if h.deleted is None:
        raise HeightError("overlay must be restricted")
    v_star, f_star = h.deleted
    geo = overlay_geometry(h.map, v_star, f_star)
    links: Dict[Tuple, List[Tuple[Tuple, Angle]]] = {d: [] for d in geo.diagonals}
    for d1, d2, delta in _chains(geo, mt.partner(), v_star):
        links[d1].append((d2, delta))
        links[d2].append((d1, -delta))
    base = min(geo.diagonals, key=repr)
    heights: Dict[Tuple, Angle] = {base: geo.diagonals[base].arg}
    queue = deque([base])
    while queue:
        d = queue.popleft()
        for e, delta in links[d]:
            val = heights[d] + delta
            if e not in heights:
                heights[e] = val
                queue.append(e)
            elif not is_zero(heights[e] - val):
                raise HeightInconsistency(f"loop defect {heights[e] - val} at {e}")
    if len(heights) != len(geo.diagonals):
        raise HeightInconsistency("constraint graph does not reach every diagonal")
    return HeightField(geo, heights, base, v_star, f_star)


# -- winding ---------------------------------------------------------------

def tree_path(t: Arborescence, m: PlanarMap, frm: int, to: int) -> List[int]:
    """Half-edges of the tree path from ``frm`` up to its ancestor ``to``."""
    out = t.as_dict()
    if frm not in m.vertices or to not in m.vertices:
        raise NotOnTree("unknown vertex")
    path = []
    v = frm
    while v != to:
        if v not in out:
            raise NotOnTree(f"{to} is not an ancestor of {frm}")
        path.append(out[v])
        v = m.target(out[v])
    return path


def _default_continuation(t: Arborescence, m: PlanarMap, to: int, e_r):
    if e_r is not None:
        return e_r
    out = t.as_dict()
    if to not in out:
        raise NotOnTree("the root has no tree edge; pass the continuation explicitly")
    return out[to]


def _direction(m: PlanarMap, g: int):
    a, b = m.coords[m.origin(g)], m.coords[m.target(g)]
    return _sub(b, a)


def _cont_halfedge(m: PlanarMap, to: int, e_r: int) -> int:
    """Accept a half-edge leaving ``to`` or an edge id incident to it."""
    if 0 <= e_r < m.num_halfedges and m.origin(e_r) == to:
        return e_r
    for g in (2 * e_r, 2 * e_r + 1):
        if g < m.num_halfedges and m.origin(g) == to:
            return g
    raise NotOnTree(f"continuation {e_r} does not leave vertex {to}")


def winding_turns(t: Arborescence, m: PlanarMap, frm: int, to: int,
                  e_r: Optional[int] = None) -> Angle:
    """Left turns minus right turns along the tree path, in quarter-turns.

    ``e_r`` is the continuation out of ``to`` (a half-edge leaving it);
    by default the tree edge of ``to``.
    """
    path = tree_path(t, m, frm, to)
    if not path:
        raise NotOnTree("path must contain at least one edge")
    last = _cont_halfedge(m, to, _default_continuation(t, m, to, e_r))
    dirs = [_direction(m, g) for g in path + [last]]
    exact = all(exact_angle(d) is not None for d in dirs)
    total = Fraction(0) if exact else 0.0
    for a, b in zip(dirs, dirs[1:]):
        turn = ccw(angle(a, exact), angle(b, exact))
        if turn == 2 or (not exact and abs(turn - 2) < TOL):
            raise HeightError("path reverses direction; turn is ambiguous")
        total += turn - FULL if turn > 2 else turn
    return total


def winding_heights(t: Arborescence, m: PlanarMap, frm: int, to: int,
                    e_r: Optional[int], field: HeightField) -> Angle:
    """(h(f_k) - c_k) - (h(f_1) - c_1) for the facets left of the path."""
    path = tree_path(t, m, frm, to)
    if not path:
        raise NotOnTree("path must contain at least one edge")
    last = _cont_halfedge(m, to, _default_continuation(t, m, to, e_r))
    geo = field.geometry
    exact = field.exact
    f1, fk = path[0], m.next_he(path[-1])

    def corrected(g, start_dir, near):
        did = field.facet_diagonal(g, near)
        c = ccw(angle(start_dir, exact), geo.diagonals[did].arg)
        return field.heights[did] - c

    # use the diagonals adjacent to the path's first and last links
    return (corrected(fk, _direction(m, last), path[-1])
            - corrected(f1, _direction(m, path[0]), path[0]))


def left_facet_chain(m: PlanarMap, path: List[int]) -> List[int]:
    """Facets f_1..f_k left of the path, as facet half-edges."""
    chain = [path[0]]
    for g, nxt in zip(path, path[1:] + [None]):
        v_next = m.target(g)
        f = m.next_he(g)
        # sweep clockwise around v_next from the incoming edge to the outgoing one
        while True:
            chain.append(f)
            if nxt is None or f == nxt:
                break
            f = m.rot_pred(f)
    return chain
