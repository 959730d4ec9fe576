"""The overlay graph of a plane map: one node per vertex, edge and face.

Edge-nodes are joined to the vertex-nodes at their ends (weight of the dart
leaving that vertex along the edge, 0 when the edge is one-way the other
way) and to the face-nodes on their two sides (weight 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .planar_map import PlanarMap

Node = Tuple[str, int]

VERTEX, EDGE, FACE = "v", "e", "f"


class UnknownVertex(KeyError):
    pass


class UnknownFace(KeyError):
    pass


def node_name(node: Node) -> str:
    return f"{node[0]}:{node[1]}"


def parse_node(name: str) -> Node:
    kind, _, idx = name.partition(":")
    if kind not in (VERTEX, EDGE, FACE) or not idx:
        raise ValueError(f"bad node id {name!r}")
    return kind, int(idx)


def node_key(node) -> tuple:
    """Sort key that works for any hashable node label."""
    return (type(node).__name__, repr(node))


@dataclass(frozen=True)
class OverlayLink:
    node: Node            # vertex- or face-node
    edge_node: Node
    weight: Fraction
    source_dart: Optional[int] = None


@dataclass
class OverlayGraph:
    map: PlanarMap
    nodes: Tuple[Node, ...]
    links: Tuple[OverlayLink, ...]
    deleted: Optional[Tuple[int, int]] = None
    incident_flag: Optional[bool] = None
    adj: Dict[Node, Dict[Node, Fraction]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.adj:
            self.adj = {n: {} for n in self.nodes}
            for ln in self.links:
                a, b = ln.node, ln.edge_node
                self.adj[a][b] = self.adj[a].get(b, Fraction(0)) + ln.weight
                self.adj[b][a] = self.adj[b].get(a, Fraction(0)) + ln.weight

    def pair_weight(self, a: Node, b: Node) -> Fraction:
        return self.adj[a][b]

    def count(self, kind: str) -> int:
        return sum(1 for n in self.nodes if n[0] == kind)

    def to_text(self) -> str:
        lines = [f"node {node_name(n)}" for n in self.nodes]
        for i, ln in enumerate(self.links):
            w = ln.weight
            ws = str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"
            lines.append(f"link {i} {node_name(ln.node)} {node_name(ln.edge_node)} {ws}")
        if self.deleted is not None:
            lines.append(f"deleted v:{self.deleted[0]} f:{self.deleted[1]}")
        return "\n".join(lines) + "\n"


def build_overlay(m: PlanarMap) -> OverlayGraph:
    nodes = [(VERTEX, v) for v in m.vertices]
    nodes += [(EDGE, k) for k in range(len(m.edges))]
    nodes += [(FACE, f) for f in range(len(m.faces))]
    links = []
    for k in range(len(m.edges)):
        a, b = m.edge_endpoints(k)
        loop = a == b
        for h in (2 * k, 2 * k + 1):
            w = Fraction(0) if loop else m.halfedge_weight(h)
            links.append(OverlayLink((VERTEX, m.origin(h)), (EDGE, k), w, m.dart_of(h)))
        for h in (2 * k, 2 * k + 1):
            links.append(OverlayLink((FACE, m.face_of(h)), (EDGE, k), Fraction(1)))
    return OverlayGraph(m, tuple(nodes), tuple(links))


def restrict(h: OverlayGraph, v_star: int, f_star: int) -> OverlayGraph:
    m = h.map
    if v_star not in m.vertices:
        raise UnknownVertex(v_star)
    if not 0 <= f_star < len(m.faces):
        raise UnknownFace(f_star)
    gone = {(VERTEX, v_star), (FACE, f_star)}
    nodes = tuple(n for n in h.nodes if n not in gone)
    links = tuple(ln for ln in h.links if ln.node not in gone)
    return OverlayGraph(m, nodes, links, deleted=(v_star, f_star),
                        incident_flag=m.is_incident(v_star, f_star))
