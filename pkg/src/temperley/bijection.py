"""Trees of a plane map versus perfect matchings of its restricted overlay.

A spanning arborescence rooted at ``v*`` together with its dual tree
(oriented toward ``f*``) pairs every vertex-node with the edge-node of its
outgoing tree edge and every face-node with the edge-node of its outgoing
dual edge.  The result is a perfect matching of the overlay with ``v*`` and
``f*`` deleted, of the same weight.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from .overlay import EDGE, FACE, VERTEX, Node, OverlayGraph, node_key, node_name, restrict
from .planar_map import PlanarMap


class BijectionError(ValueError):
    pass


class RootMismatch(BijectionError):
    pass


class CycleDetected(BijectionError):
    pass


class NotIncident(BijectionError):
    pass


class NotPerfect(BijectionError):
    pass


@dataclass(frozen=True)
class Arborescence:
    """Spanning tree oriented toward ``root``.

    ``out_he`` maps each non-root vertex to the half-edge leaving it along
    its tree edge.  A half-edge without a dart (the wrong way along a
    one-way street) is allowed and has weight 0.
    """

    root: int
    out_he: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_halfedges(cls, root: int, out_he: Mapping[int, int]) -> "Arborescence":
        return cls(root, tuple(sorted(out_he.items())))

    @classmethod
    def from_darts(cls, m: PlanarMap, root: int, out_dart: Mapping[int, int]) -> "Arborescence":
        return cls.from_halfedges(root, {v: m.halfedge_of_dart(d) for v, d in out_dart.items()})

    def as_dict(self) -> Dict[int, int]:
        return dict(self.out_he)

    def out_darts(self, m: PlanarMap) -> Dict[int, Optional[int]]:
        return {v: m.dart_of(h) for v, h in self.out_he}

    def edges(self) -> FrozenSet[int]:
        return frozenset(h >> 1 for _, h in self.out_he)

    def weight(self, m: PlanarMap) -> Fraction:
        w = Fraction(1)
        for _, h in self.out_he:
            w *= m.halfedge_weight(h)
        return w

    def parent(self, m: PlanarMap, v: int) -> Optional[int]:
        h = dict(self.out_he).get(v)
        return None if h is None else m.target(h)

    def to_text(self) -> str:
        """``root <v>`` then one ``out <vertex> <half-edge>`` line per vertex."""
        return "\n".join([f"root {self.root}"] + [f"out {v} {h}" for v, h in self.out_he]) + "\n"


def parse_tree(text: str) -> Arborescence:
    root = None
    out = {}
    for raw in text.splitlines():
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        if parts[0] == "root" and len(parts) == 2:
            root = int(parts[1])
        elif parts[0] == "out" and len(parts) == 3:
            out[int(parts[1])] = int(parts[2])
        else:
            raise ValueError(f"bad tree line {raw!r}")
    if root is None:
        raise ValueError("tree text has no root line")
    return Arborescence.from_halfedges(root, out)


@dataclass(frozen=True)
class DualArborescence:
    """Dual spanning tree oriented toward ``root`` (a face).

    ``out_dual`` maps each non-root face to the dual dart leaving it, which
    is the primal half-edge having that face on its left.
    """

    root: int
    out_dual: Tuple[Tuple[int, int], ...]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.out_dual)

    def edges(self) -> FrozenSet[int]:
        return frozenset(h >> 1 for _, h in self.out_dual)


@dataclass(frozen=True)
class PerfectMatching:
    pairs: Tuple[Tuple[Node, Node], ...]
    weight: Fraction

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Node, Node]], weight: Fraction) -> "PerfectMatching":
        norm = []
        for a, b in pairs:
            a, b = sorted((a, b), key=node_key)
            norm.append((a, b))
        norm.sort(key=lambda p: (node_key(p[0]), node_key(p[1])))
        return cls(tuple(norm), Fraction(weight))

    def partner(self) -> Dict[Node, Node]:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    def to_text(self) -> str:
        lines = []
        for a, b in sorted((sorted((node_name(a), node_name(b))) for a, b in self.pairs)):
            lines.append(f"pair {a} {b}")
        w = self.weight
        lines.append(f"weight {w.numerator}" if w.denominator == 1 else f"weight {w.numerator}/{w.denominator}")
        return "\n".join(lines) + "\n"


def matching_from_partner(h: OverlayGraph, partner: Mapping[Node, Node]) -> PerfectMatching:
    seen = set()
    pairs = []
    w = Fraction(1)
    for a, b in partner.items():
        if a in seen:
            continue
        if partner.get(b) != a:
            raise NotPerfect(f"{a} and {b} are not mutually paired")
        if b not in h.adj.get(a, {}):
            raise NotPerfect(f"{node_name(a)} and {node_name(b)} are not linked")
        seen.update((a, b))
        pairs.append((a, b))
        w *= h.adj[a][b]
    if seen != set(h.nodes):
        raise NotPerfect("matching does not cover every node")
    return PerfectMatching.from_pairs(pairs, w)


def parse_matching(text: str) -> PerfectMatching:
    from .overlay import parse_node

    pairs = []
    weight = Fraction(1)
    for raw in text.splitlines():
        parts = raw.split()
        if not parts:
            continue
        if parts[0] == "pair" and len(parts) == 3:
            pairs.append((parse_node(parts[1]), parse_node(parts[2])))
        elif parts[0] == "weight" and len(parts) == 2:
            weight = Fraction(parts[1])
        else:
            raise ValueError(f"bad matching line {raw!r}")
    return PerfectMatching.from_pairs(pairs, weight)


# -- trees and dual trees ---------------------------------------------------

def dual_tree(t: Arborescence, m: PlanarMap, f_star: int) -> DualArborescence:
    tree_edges = t.edges()
    adj: Dict[int, List[int]] = {f: [] for f in range(len(m.faces))}
    for k in range(len(m.edges)):
        if k in tree_edges:
            continue
        for h in (2 * k, 2 * k + 1):
            if m.face_of(h) != m.face_of(h ^ 1):
                adj[m.face_of(h)].append(h)
    out: Dict[int, int] = {}
    seen = {f_star}
    queue = deque([f_star])
    while queue:
        f = queue.popleft()
        for h in adj[f]:
            g = m.face_of(h ^ 1)
            if g not in seen:
                seen.add(g)
                out[g] = h ^ 1      # half-edge with g on its left
                queue.append(g)
    if len(seen) != len(m.faces):
        raise BijectionError("complement of the tree does not span the dual")
    return DualArborescence(f_star, tuple(sorted(out.items())))


def tree_to_matching(t: Arborescence, h: OverlayGraph) -> PerfectMatching:
    if h.deleted is None:
        raise BijectionError("overlay must be restricted first")
    v_star, f_star = h.deleted
    if t.root != v_star:
        raise RootMismatch(f"tree rooted at {t.root}, overlay restricted at {v_star}")
    m = h.map
    partner: Dict[Node, Node] = {}
    for v, he in t.out_he:
        a, b = (VERTEX, v), (EDGE, he >> 1)
        if b in partner:
            raise BijectionError("two tree vertices share an edge")
        partner[a], partner[b] = b, a
    for f, he in dual_tree(t, m, f_star).out_dual:
        a, b = (FACE, f), (EDGE, he >> 1)
        if b in partner:
            raise BijectionError("edge used by both the tree and its dual")
        partner[a], partner[b] = b, a
    return matching_from_partner(h, partner)


def _acyclic_toward(m: PlanarMap, root: int, out_he: Mapping[int, int]) -> bool:
    state: Dict[int, int] = {root: 2}
    for start in out_he:
        path = []
        v = start
        while state.get(v, 0) == 0:
            state[v] = 1
            path.append(v)
            v = m.target(out_he[v])
        if state[v] == 1:
            return False
        for u in path:
            state[u] = 2
    return True


def matching_to_tree(mt: PerfectMatching, h: OverlayGraph) -> Arborescence:
    if h.deleted is None:
        raise BijectionError("overlay must be restricted first")
    v_star, _ = h.deleted
    m = h.map
    out: Dict[int, int] = {}
    for a, b in mt.pairs:
        if a[0] == EDGE:
            a, b = b, a
        if a[0] != VERTEX:
            continue
        v, k = a[1], b[1]
        he = 2 * k if m.origin(2 * k) == v else 2 * k + 1
        if m.origin(he) != v:
            raise NotPerfect(f"vertex {v} paired with non-incident edge {k}")
        out[v] = he
    if set(out) != set(m.vertices) - {v_star}:
        raise NotPerfect("matching does not pair every vertex-node")
    if not _acyclic_toward(m, v_star, out):
        raise CycleDetected("edges paired with vertex-nodes contain a cycle")
    return Arborescence.from_halfedges(v_star, out)


# -- sliding edges ----------------------------------------------------------

def rebase_matching(mt: PerfectMatching, frm: Tuple[int, int], to: Tuple[int, int],
                    h_full: OverlayGraph) -> PerfectMatching:
    """Move a matching of H(frm) to one of H(to) by sliding along chains.

    The vertex chain starts at the new deleted vertex and follows matched
    edges until it reaches the old one; each edge-node on it is re-paired
    with the next vertex.  The face chain is handled the same way.
    """
    m = h_full.map
    for v, f in (frm, to):
        if not m.is_incident(v, f):
            raise NotIncident(f"vertex {v} is not on face {f}")
    partner = dict(mt.partner())

    def slide(kind: str, start: int, stop: int, other_end):
        chain = []
        x = start
        seen = {x}
        while x != stop:
            e = partner[(kind, x)]
            y = other_end(e[1], x)
            if y in seen:
                raise CycleDetected("sliding chain revisited a node")
            seen.add(y)
            chain.append((x, e))
            x = y
        for x, e in chain:
            del partner[(kind, x)]
        for (x, e), (y, _) in zip(chain, chain[1:] + [(stop, None)]):
            partner[e] = (kind, y)
            partner[(kind, y)] = e

    def other_vertex(k, v):
        a, b = m.edge_endpoints(k)
        return b if a == v else a

    def other_face(k, f):
        a, b = m.edge_faces(k)
        return b if a == f else a

    slide(VERTEX, to[0], frm[0], other_vertex)
    slide(FACE, to[1], frm[1], other_face)
    return matching_from_partner(restrict(h_full, *to), partner)
