"""Embedded planar multigraphs with weighted darts.

A map is given combinatorially: darts (directed, weighted edges) plus, at
every vertex, the counterclockwise cyclic order of the edge-ends incident to
it.  Internally every edge owns two half-edges: half-edge ``2k`` starts at
the tail of the edge's primary dart and ``2k + 1`` starts at its head.  For a
twin pair (an undirected edge embedded as two coincident darts) the second
half-edge carries the twin dart; for a one-way dart it carries no dart.

Faces are traced with ``next(h) = rotation-successor of twin(h)`` which walks
each face with the face on its left.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

Token = Union[int, str]


class MapError(ValueError):
    """Base class for invalid map input."""


class NotConnected(MapError):
    pass


class RotationMismatch(MapError):
    pass


class EulerViolation(MapError):
    pass


class ParseError(MapError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator()
    return Fraction(value)


@dataclass(frozen=True)
class Dart:
    id: int
    tail: int
    head: int
    weight: Fraction
    twin: Optional[int] = None

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


class PlanarMap:
    """Connected planar multigraph with a rotation system.

    Parameters
    ----------
    vertices : iterable of int
    darts : iterable of Dart or (id, tail, head, weight[, twin]) tuples
    rotations : mapping vertex -> sequence of tokens, counterclockwise.  A
        token is a dart id (the end of that dart at this vertex) or the
        string ``"~id"`` for the head end of a dart without a twin.  A bare
        id at the head of a twinless dart is accepted when unambiguous.
    outer : dart token whose half-edge lies on the outer face; defaults to
        the smallest dart id.
    coords : optional mapping vertex -> (x, y), exact rationals.
    """

    def __init__(self, vertices: Iterable[int], darts, rotations: Mapping[int, Sequence[Token]],
                 outer: Optional[Token] = None, coords: Optional[Mapping] = None):
        self.vertices: Tuple[int, ...] = tuple(sorted(set(vertices)))
        vset = set(self.vertices)
        if not self.vertices:
            raise MapError("a map needs at least one vertex")
        self.darts: Dict[int, Dart] = {}
        for d in darts:
            if not isinstance(d, Dart):
                d = Dart(int(d[0]), int(d[1]), int(d[2]), as_fraction(d[3]),
                         None if len(d) < 5 or d[4] is None else int(d[4]))
            if d.id in self.darts:
                raise MapError(f"duplicate dart id {d.id}")
            if d.tail not in vset or d.head not in vset:
                raise MapError(f"dart {d.id} has an unknown endpoint")
            if d.weight < 0:
                raise MapError(f"dart {d.id} has negative weight")
            self.darts[d.id] = Dart(d.id, d.tail, d.head, as_fraction(d.weight), d.twin)
        self._check_twins()
        self.coords: Dict[int, Tuple[Fraction, Fraction]] = {}
        if coords:
            for v, (x, y) in coords.items():
                self.coords[v] = (as_fraction(x), as_fraction(y))

        # edges: primary dart = smaller id of a twin pair
        edges = []
        for d in sorted(self.darts.values(), key=lambda d: d.id):
            if d.twin is None or d.id < d.twin:
                edges.append((d.id, d.twin))
        self.edges: Tuple[Tuple[int, Optional[int]], ...] = tuple(edges)
        self._edge_of_dart: Dict[int, int] = {}
        self._he_dart: List[Optional[int]] = []
        self._he_origin: List[int] = []
        for k, (p, t) in enumerate(self.edges):
            self._edge_of_dart[p] = k
            if t is not None:
                self._edge_of_dart[t] = k
            self._he_dart += [p, t]
            self._he_origin += [self.darts[p].tail, self.darts[p].head]

        self.rotation: Dict[int, Tuple[int, ...]] = self._resolve_rotations(rotations)
        self._succ: List[int] = [0] * len(self._he_origin)
        self._pred: List[int] = [0] * len(self._he_origin)
        for v, hs in self.rotation.items():
            n = len(hs)
            for i, h in enumerate(hs):
                self._succ[h] = hs[(i + 1) % n]
                self._pred[h] = hs[(i - 1) % n]

        self._check_connected()
        self._trace_faces()
        nv, ne, nf = len(self.vertices), len(self.edges), len(self.faces)
        if nv - ne + nf != 2:
            raise EulerViolation(f"V - E + F = {nv} - {ne} + {nf} != 2")
        self.outer_face: int = self._resolve_outer(outer)

    # -- construction helpers -------------------------------------------

    def _check_twins(self):
        for d in self.darts.values():
            if d.twin is None:
                continue
            t = self.darts.get(d.twin)
            if t is None:
                raise MapError(f"dart {d.id} names missing twin {d.twin}")
            if t.twin != d.id or t.tail != d.head or t.head != d.tail or t.id == d.id:
                raise MapError(f"darts {d.id} and {t.id} are not a valid twin pair")

    def _resolve_rotations(self, rotations):
        used = [False] * len(self._he_origin)
        result = {}
        for v in self.vertices:
            hs = []
            for tok in rotations.get(v, ()):
                h = self._token_halfedge(tok, v, used)
                if h is None:
                    raise RotationMismatch(f"token {tok!r} cannot be placed at vertex {v}")
                used[h] = True
                hs.append(h)
            result[v] = tuple(hs)
        extra = set(rotations) - set(self.vertices)
        if extra:
            raise RotationMismatch(f"rotation given for unknown vertices {sorted(extra)}")
        missing = [h for h, u in enumerate(used) if not u]
        if missing:
            raise RotationMismatch(f"half-edges missing from rotations: {missing}")
        return result

    def _token_halfedge(self, tok, v, used):
        head_end = False
        if isinstance(tok, str):
            tok = tok.strip()
            if tok.startswith("~"):
                head_end = True
                tok = tok[1:]
            tok = int(tok)
        if tok not in self.darts:
            return None
        k = self._edge_of_dart[tok]
        p, t = self.edges[k]
        if head_end:
            cands = [2 * k + 1] if t is None else []
        elif tok == p:
            cands = [2 * k] + ([2 * k + 1] if t is None else [])
        else:
            cands = [2 * k + 1]
        for h in cands:
            if not used[h] and self._he_origin[h] == v:
                return h
        return None

    def _check_connected(self):
        adj = {v: set() for v in self.vertices}
        for h in range(0, len(self._he_origin), 2):
            a, b = self._he_origin[h], self._he_origin[h + 1]
            adj[a].add(b)
            adj[b].add(a)
        seen = {self.vertices[0]}
        queue = deque(seen)
        while queue:
            u = queue.popleft()
            for w in adj[u] - seen:
                seen.add(w)
                queue.append(w)
        if len(seen) != len(self.vertices):
            raise NotConnected(f"{len(self.vertices) - len(seen)} vertices unreachable")

    def _trace_faces(self):
        nh = len(self._he_origin)
        self._face: List[int] = [-1] * nh
        faces = []
        for start in range(nh):
            if self._face[start] >= 0:
                continue
            walk = []
            h = start
            while self._face[h] < 0:
                self._face[h] = len(faces)
                walk.append(h)
                h = self.next_he(h)
            if h != start:
                raise EulerViolation("face tracing did not close up")
            faces.append(tuple(walk))
        if not faces:
            faces.append(())
        self.faces: Tuple[Tuple[int, ...], ...] = tuple(faces)

    def _resolve_outer(self, outer):
        if not self._he_origin:
            return 0
        if outer is None:
            outer = min(self.darts)
        v_hint = None
        if isinstance(outer, str) and outer.strip().startswith("~"):
            d = int(outer.strip()[1:])
            if d not in self.darts:
                raise MapError(f"unknown outer dart {outer!r}")
            return self._face[2 * self._edge_of_dart[d] + 1]
        d = int(outer)
        if d not in self.darts:
            raise MapError(f"unknown outer dart {outer!r}")
        return self._face[self.halfedge_of_dart(d)]

    # -- queries ----------------------------------------------------------

    @property
    def num_halfedges(self) -> int:
        return len(self._he_origin)

    def origin(self, h: int) -> int:
        return self._he_origin[h]

    def target(self, h: int) -> int:
        return self._he_origin[h ^ 1]

    def dart_of(self, h: int) -> Optional[int]:
        """Dart running along half-edge ``h`` away from its origin, if any."""
        return self._he_dart[h]

    def halfedge_of_dart(self, d: int) -> int:
        k = self._edge_of_dart[d]
        return 2 * k if self.edges[k][0] == d else 2 * k + 1

    def edge_of_dart(self, d: int) -> int:
        return self._edge_of_dart[d]

    def face_of(self, h: int) -> int:
        """Face on the left of half-edge ``h``."""
        return self._face[h]

    def next_he(self, h: int) -> int:
        return self._pred[h ^ 1]

    def prev_he(self, h: int) -> int:
        return self._succ[h] ^ 1

    def rot_succ(self, h: int) -> int:
        return self._succ[h]

    def rot_pred(self, h: int) -> int:
        return self._pred[h]

    def halfedge_weight(self, h: int) -> Fraction:
        d = self._he_dart[h]
        return Fraction(0) if d is None else self.darts[d].weight

    def edge_faces(self, k: int) -> Tuple[int, int]:
        return self._face[2 * k], self._face[2 * k + 1]

    def edge_endpoints(self, k: int) -> Tuple[int, int]:
        return self._he_origin[2 * k], self._he_origin[2 * k + 1]

    def face_vertices(self, f: int) -> List[int]:
        return [self._he_origin[h] for h in self.faces[f]]

    def is_incident(self, v: int, f: int) -> bool:
        if not self.faces[f]:
            return True
        return v in self.face_vertices(f)

    def out_darts(self, v: int) -> List[Dart]:
        return [self.darts[d] for d in sorted(self.darts) if self.darts[d].tail == v]

    def face_containing(self, u: int, w: int, left: bool = True) -> int:
        """Face on the left (or right) of the first half-edge running u -> w."""
        for h in range(self.num_halfedges):
            if self.origin(h) == u and self.target(h) == w:
                return self._face[h] if left else self._face[h ^ 1]
        raise MapError(f"no edge between {u} and {w}")

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def rotation_tokens(self) -> Dict[int, List[str]]:
        """Rotations written as tokens accepted by the constructor."""
        out = {}
        for v, hs in self.rotation.items():
            toks = []
            for h in hs:
                d = self._he_dart[h]
                toks.append(str(d) if d is not None else f"~{self._he_dart[h ^ 1]}")
            out[v] = toks
        return out

    def outer_token(self) -> str:
        if not self._he_origin:
            return None
        h = self.faces[self.outer_face][0]
        d = self._he_dart[h]
        return str(d) if d is not None else f"~{self._he_dart[h ^ 1]}"

    def __repr__(self):
        return (f"PlanarMap(V={len(self.vertices)}, E={len(self.edges)}, "
                f"F={len(self.faces)}, outer={self.outer_face})")


def build_map(vertex_count: int, darts, rotations, outer=None, coords=None) -> PlanarMap:
    """Build a map on vertices ``0 .. vertex_count-1``.

    ``darts`` entries are ``(tail, head, weight)`` or ``(tail, head, weight,
    twin_index)`` where ``twin_index`` refers to another entry; dart ids are
    list positions.
    """
    items = []
    for i, d in enumerate(darts):
        twin = d[3] if len(d) > 3 else None
        items.append(Dart(i, int(d[0]), int(d[1]), as_fraction(d[2]), twin))
    return PlanarMap(range(vertex_count), items, rotations, outer=outer, coords=coords)


@dataclass(frozen=True)
class DualMap:
    """Dual of a map.  Dual dart ``h`` crosses primal half-edge ``h`` from the
    face on its left to the face on its right."""

    map: PlanarMap
    primal: PlanarMap

    def crossing(self, dart_id: int) -> int:
        return self.primal.halfedge_of_dart(dart_id)


def dual(m: PlanarMap) -> DualMap:
    darts = []
    for h in range(m.num_halfedges):
        darts.append(Dart(h, m.face_of(h), m.face_of(h ^ 1), Fraction(1), h ^ 1))
    rotations = {f: list(walk) for f, walk in enumerate(m.faces)}
    coords = {}
    if m.coords and all(v in m.coords for v in m.vertices):
        for f, walk in enumerate(m.faces):
            if f == m.outer_face or not walk:
                continue
            pts = [m.coords[m.origin(h)] for h in walk]
            coords[f] = (sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))
    outer = None
    if m.num_halfedges:
        outer = m.faces[m.outer_face][0]
    return DualMap(PlanarMap(range(len(m.faces)), darts, rotations, outer=outer, coords=coords), m)


def merge_parallel_darts(m: PlanarMap) -> PlanarMap:
    """Replace every bundle of parallel (non-loop) edges between the same two
    vertices by a single edge whose dart weights are the per-direction sums.

    Each arborescence uses at most one dart between a given pair of
    vertices, so the weighted arborescence count is unchanged for every
    root.
    """
    groups: Dict[Tuple[int, int], List[int]] = {}
    for k in range(len(m.edges)):
        a, b = m.edge_endpoints(k)
        if a == b:
            continue
        groups.setdefault((min(a, b), max(a, b)), []).append(k)
    keep_edge = {}
    removed = set()
    for (a, b), ks in groups.items():
        keep_edge[ks[0]] = ks
        removed.update(ks[1:])
    if not removed:
        return m

    next_id = max(m.darts) + 1
    darts = []
    new_token: Dict[int, str] = {}  # half-edge -> token in the new map
    for k, (p, t) in enumerate(m.edges):
        if k in removed:
            continue
        a, b = m.edge_endpoints(k)
        if k not in keep_edge:
            darts.append(m.darts[p])
            if t is not None:
                darts.append(m.darts[t])
            new_token[2 * k] = str(p)
            new_token[2 * k + 1] = str(t) if t is not None else f"~{p}"
            continue
        fwd = Fraction(0)
        back = Fraction(0)
        has_back = False
        for j in keep_edge[k]:
            for h in (2 * j, 2 * j + 1):
                d = m.dart_of(h)
                if d is None:
                    continue
                if m.origin(h) == a:
                    fwd += m.darts[d].weight
                else:
                    back += m.darts[d].weight
                    has_back = True
        if has_back:
            tid = t if t is not None else next_id
            if t is None:
                next_id += 1
            darts.append(Dart(p, a, b, fwd, tid))
            darts.append(Dart(tid, b, a, back, p))
            new_token[2 * k] = str(p)
            new_token[2 * k + 1] = str(tid)
        else:
            darts.append(Dart(p, a, b, fwd, None))
            new_token[2 * k] = str(p)
            new_token[2 * k + 1] = f"~{p}"
    rotations = {}
    for v, hs in m.rotation.items():
        rotations[v] = [new_token[h] for h in hs if (h >> 1) not in removed]
    outer_h = next((h for h in m.faces[m.outer_face] if (h >> 1) not in removed), None)
    outer = new_token[outer_h] if outer_h is not None else None
    return PlanarMap(m.vertices, darts, rotations, outer=outer, coords=m.coords)


# -- text format ------------------------------------------------------------

def _parse_rational(tok: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {tok!r}", line)


def parse_map(text: str) -> PlanarMap:
    """Parse the line-oriented graph format (``vertex``/``dart``/``rot``/``outer``)."""
    vertices: Dict[int, Optional[Tuple[Fraction, Fraction]]] = {}
    darts: Dict[int, list] = {}
    rotations: Dict[int, List[str]] = {}
    outer = None
    dart_line: Dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        try:
            if kind == "vertex":
                if len(args) not in (1, 3):
                    raise ParseError("expected: vertex <id> [<x> <y>]", lineno)
                vid = int(args[0])
                if vid in vertices:
                    raise ParseError(f"duplicate vertex id {vid}", lineno)
                vertices[vid] = None
                if len(args) == 3:
                    vertices[vid] = (_parse_rational(args[1], lineno), _parse_rational(args[2], lineno))
            elif kind == "dart":
                if len(args) not in (4, 5):
                    raise ParseError("expected: dart <id> <tail> <head> <weight> [twin=<id>]", lineno)
                did = int(args[0])
                if did in darts:
                    raise ParseError(f"duplicate dart id {did}", lineno)
                twin = None
                if len(args) == 5:
                    if not args[4].startswith("twin="):
                        raise ParseError(f"unexpected field {args[4]!r}", lineno)
                    twin = int(args[4][5:])
                darts[did] = [did, int(args[1]), int(args[2]), _parse_rational(args[3], lineno), twin]
                dart_line[did] = lineno
            elif kind == "rot":
                if not args:
                    raise ParseError("expected: rot <vertex> <dart...>", lineno)
                v = int(args[0])
                if v in rotations:
                    raise ParseError(f"duplicate rotation for vertex {v}", lineno)
                rotations[v] = args[1:]
            elif kind == "outer":
                if len(args) != 1:
                    raise ParseError("expected: outer <dart>", lineno)
                outer = args[0]
            else:
                raise ParseError(f"unknown record {kind!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), lineno)
    # twin declared on one side only
    for did, d in darts.items():
        t = d[4]
        if t is None:
            continue
        if t not in darts:
            raise ParseError(f"twin {t} of dart {did} not declared", dart_line[did])
        other = darts[t]
        if other[4] is None:
            other[4] = did
        elif other[4] != did:
            raise ParseError(f"inconsistent twin for dart {did}", dart_line[did])
    coords = {v: c for v, c in vertices.items() if c is not None}
    for d in darts.values():
        for v in (d[1], d[2]):
            if v not in vertices:
                raise ParseError(f"dart {d[0]} uses undeclared vertex {v}", dart_line[d[0]])
    return PlanarMap(vertices.keys(), [tuple(d) for d in darts.values()],
                     rotations, outer=outer, coords=coords or None)


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_map(m: PlanarMap) -> str:
    lines = []
    for v in m.vertices:
        if v in m.coords:
            x, y = m.coords[v]
            lines.append(f"vertex {v} {_fmt_q(x)} {_fmt_q(y)}")
        else:
            lines.append(f"vertex {v}")
    for d in sorted(m.darts.values(), key=lambda d: d.id):
        twin = f" twin={d.twin}" if d.twin is not None else ""
        lines.append(f"dart {d.id} {d.tail} {d.head} {_fmt_q(d.weight)}{twin}")
    for v, toks in m.rotation_tokens().items():
        lines.append(" ".join(["rot", str(v)] + toks))
    tok = m.outer_token()
    if tok is not None:
        lines.append(f"outer {tok}")
    return "\n".join(lines) + "\n"


# -- convenience constructors ---------------------------------------------

def map_from_edges(coords: Mapping[int, Tuple], edges, outer=None, directions=None,
                   rotation_override: Optional[Mapping[int, Sequence]] = None) -> PlanarMap:
    """Build a map whose rotations are read off straight-line coordinates.

    ``edges`` is a list of ``(u, v, w_uv, w_vu)``; ``w_vu = None`` makes a
    one-way dart.  ``directions`` optionally maps ``(edge_index, end)`` to a
    direction vector used instead of the coordinate difference (for edges
    into an extended vertex).  ``rotation_override`` gives explicit
    counterclockwise orders, as lists of ``(edge_index, end)``, for vertices
    whose geometry is not a point.  ``outer`` is ``(edge_index, end)``: the
    face on the left of that edge-end.
    """
    import math

    darts = []
    ends: Dict[int, List[Tuple[float, str, Tuple[int, int]]]] = {}
    tokens: Dict[Tuple[int, int], str] = {}
    did = 0
    for i, e in enumerate(edges):
        u, v, w_uv, w_vu = e
        p = did
        did += 1
        if w_vu is None:
            darts.append(Dart(p, u, v, as_fraction(w_uv)))
            tokens[(i, 0)] = str(p)
            tokens[(i, 1)] = f"~{p}"
        else:
            t = did
            did += 1
            darts.append(Dart(p, u, v, as_fraction(w_uv), t))
            darts.append(Dart(t, v, u, as_fraction(w_vu), p))
            tokens[(i, 0)] = str(p)
            tokens[(i, 1)] = str(t)
        for end, (a, b) in enumerate(((u, v), (v, u))):
            if directions and (i, end) in directions:
                dx, dy = directions[(i, end)]
            else:
                dx = float(coords[b][0]) - float(coords[a][0])
                dy = float(coords[b][1]) - float(coords[a][1])
            ends.setdefault(a, []).append((math.atan2(dy, dx), tokens[(i, end)], (i, end)))
    rotations = {}
    for v in coords:
        if rotation_override and v in rotation_override:
            rotations[v] = [tokens[key] for key in rotation_override[v]]
        else:
            rotations[v] = [tok for _, tok, _ in sorted(ends.get(v, []), key=lambda t: t[0])]
    outer_tok = tokens[outer] if outer is not None else None
    pts = {v: c for v, c in coords.items() if c is not None}
    return PlanarMap(coords.keys(), darts, rotations, outer=outer_tok, coords=pts or None)


def map_with_root(coords: Mapping[int, Tuple], edges, root: int, root_edges,
                  outer=None, center: Optional[Tuple[float, float]] = None) -> PlanarMap:
    """Straight-line map plus one extended vertex ``root`` wired to the boundary.

    ``root_edges`` lists ``(u, w_u_root, w_root_u, direction)``: an edge from
    boundary vertex ``u`` leaving in ``direction`` toward the root.  The
    root's rotation lists these edges by decreasing angle of their
    midpoints about ``center``: seen from the surrounding vertex the region
    is traversed clockwise.
    """
    import math

    pts = {v: (float(c[0]), float(c[1])) for v, c in coords.items() if v != root}
    if center is None:
        center = (sum(p[0] for p in pts.values()) / len(pts),
                  sum(p[1] for p in pts.values()) / len(pts))
    all_edges = list(edges)
    directions = {}
    keyed = []
    for u, w_out, w_in, (dx, dy) in root_edges:
        i = len(all_edges)
        all_edges.append((u, root, w_out, w_in))
        directions[(i, 0)] = (dx, dy)
        directions[(i, 1)] = (-dx, -dy)
        mx = pts[u][0] + 0.5 * dx - center[0]
        my = pts[u][1] + 0.5 * dy - center[1]
        keyed.append((-math.atan2(my, mx), (i, 1)))
    keyed.sort()
    full = dict(coords)
    full[root] = None
    return map_from_edges(full, all_edges, outer=outer, directions=directions,
                          rotation_override={root: [k for _, k in keyed]})
