"""Square-octagon boards, urban renewal, and the directed grid whose trees count them.

Board layout.  Cities are 4-cycles of corners TL, TR, BR, BL.  Rich city
(i, j) sits in column i and row j (rows grow downward), for
-1 <= i < M, -1 <= j < L, except (-1, -1).  Along the top and left edges rich
cities are partial: TL needs i, j >= 0, TR needs j >= 0, BL needs i >= 0, BR
is always present.  Poor city (p, q), 0 <= p <= M, 0 <= q <= L, sits at a
grid crossing and is a full 4-cycle; its corners link diagonally to the
nearest corner of the four surrounding rich cities, when that corner exists.

After renewing every poor city and applying the 2^(+-(i+j)) gauge, the
board is exactly the restricted overlay of an M x L directed grid F wired
to an outer vertex: TL corners are vertices, TR and BL corners are
horizontal and vertical edges, BR corners are faces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Tuple

from .bijection import tree_to_matching
from .exact_count import count_arborescences
from .overlay import EDGE, FACE, VERTEX, build_overlay, restrict
from .planar_map import PlanarMap, map_with_root, map_from_edges
from .sampler import make_rng, WilsonSampler

CORNERS = ("TL", "TR", "BR", "BL")
POOR_CYCLE = ("BR", "TR", "TL", "BL")
HALF = Fraction(1, 2)


class StructureMismatch(RuntimeError):
    pass


@dataclass
class WeightedGraph:
    """Undirected weighted graph; ``adj[a][b]`` is the summed weight of a-b links."""

    adj: Dict[Hashable, Dict[Hashable, Fraction]] = field(default_factory=dict)

    @property
    def nodes(self) -> List:
        return list(self.adj)

    def add_node(self, a):
        self.adj.setdefault(a, {})

    def add_edge(self, a, b, w=1):
        w = Fraction(w)
        self.add_node(a)
        self.add_node(b)
        self.adj[a][b] = self.adj[a].get(b, Fraction(0)) + w
        self.adj[b][a] = self.adj[b].get(a, Fraction(0)) + w

    def remove_node(self, a):
        for b in self.adj.pop(a):
            if b != a:
                del self.adj[b][a]

    def edge_count(self) -> int:
        return sum(len(v) for v in self.adj.values()) // 2

    def copy(self) -> "WeightedGraph":
        return WeightedGraph({a: dict(nb) for a, nb in self.adj.items()})


def rich(i, j, c):
    return ("R", i, j, c)


def poor(p, q, c):
    return ("P", p, q, c)


def has_rich_corner(L: int, M: int, i: int, j: int, c: str) -> bool:
    if not (-1 <= i < M and -1 <= j < L) or (i, j) == (-1, -1):
        return False
    return {"TL": i >= 0 and j >= 0, "TR": j >= 0, "BL": i >= 0, "BR": True}[c]


def connector(p: int, q: int, c: str) -> Tuple[int, int, str]:
    """Rich corner that poor corner ``c`` of city (p, q) would link to."""
    return {"BR": (p, q, "TL"), "TR": (p, q - 1, "BL"),
            "TL": (p - 1, q - 1, "BR"), "BL": (p - 1, q, "TR")}[c]


@dataclass
class SquareOctRegion:
    L: int
    M: int
    graph: WeightedGraph
    rich_cities: List[Tuple[int, int]]
    poor_cities: List[Tuple[int, int]]
    coords: Dict[Hashable, Tuple[float, float]]

    def octagon_count(self) -> int:
        return sum(1 for f in self.faces() if len(f) == 8)

    def faces(self) -> List[List[Hashable]]:
        """Bounded faces of the straight-line drawing, as node lists."""
        names = sorted(self.graph.adj, key=repr)
        idx = {n: k for k, n in enumerate(names)}
        edges = [(idx[a], idx[b], 1, 1) for a in names for b in self.graph.adj[a]
                 if idx[a] < idx[b]]
        coords = {idx[n]: self.coords[n] for n in names}
        m = map_from_edges(coords, edges)
        # the outer face is the one with the largest number of sides
        faces = [m.face_vertices(f) for f in range(len(m.faces))]
        outer = max(range(len(faces)), key=lambda f: len(faces[f]))
        return [[names[v] for v in f] for k, f in enumerate(faces) if k != outer]


def gen_region(L: int, M: int) -> SquareOctRegion:
    if L < 1 or M < 1:
        raise ValueError("order must be positive")
    g = WeightedGraph()
    coords = {}
    offs = {"TL": (-0.5, 0.5), "TR": (0.5, 0.5), "BR": (0.5, -0.5), "BL": (-0.5, -0.5)}
    rich_cities = [(i, j) for j in range(-1, L) for i in range(-1, M) if (i, j) != (-1, -1)]
    for i, j in rich_cities:
        cx, cy = 3 * i + 1.5, -(3 * j + 1.5)
        present = [c for c in CORNERS if has_rich_corner(L, M, i, j, c)]
        for c in present:
            g.add_node(rich(i, j, c))
            coords[rich(i, j, c)] = (cx + offs[c][0], cy + offs[c][1])
        for a, b in zip(CORNERS, CORNERS[1:] + CORNERS[:1]):
            if a in present and b in present:
                g.add_edge(rich(i, j, a), rich(i, j, b))
    poor_cities = [(p, q) for q in range(L + 1) for p in range(M + 1)]
    for p, q in poor_cities:
        for c in CORNERS:
            coords[poor(p, q, c)] = (3 * p + offs[c][0], -3 * q + offs[c][1])
        for a, b in zip(POOR_CYCLE, POOR_CYCLE[1:] + POOR_CYCLE[:1]):
            g.add_edge(poor(p, q, a), poor(p, q, b))
        for c in CORNERS:
            i, j, rc = connector(p, q, c)
            if has_rich_corner(L, M, i, j, rc):
                g.add_edge(poor(p, q, c), rich(i, j, rc))
    return SquareOctRegion(L, M, g, rich_cities, poor_cities, coords)


@dataclass(frozen=True)
class RenewalCertificate:
    cities_renewed: int
    factor: Fraction


@dataclass
class RenewedBoard:
    graph: WeightedGraph
    certificate: RenewalCertificate
    # (a, b) -> list of (source, weight); source is a poor city or "rich"
    sources: Dict[Tuple, List[Tuple[object, Fraction]]]
    # poor city -> {corner: rich neighbour or None}
    cities: Dict[Tuple[int, int], Dict[str, Optional[Hashable]]]


def renew_city(g: WeightedGraph, cycle: List[Hashable], sources=None, tag=None) -> Dict:
    """Urban renewal of one city: a unit-weight 4-cycle ``cycle`` in ``g``.

    Each corner may have at most one neighbour outside the city.  Corners
    with one are merged into it; corners without one are deleted.  Each
    pair of cycle-adjacent surviving corners yields a weight-1/2 edge
    between their outside neighbours.  The weighted matching sum drops by
    exactly a factor of 2.  Returns corner -> outside neighbour (or None).
    """
    inside = set(cycle)
    outside = {}
    for c in cycle:
        nb = [b for b in g.adj[c] if b not in inside]
        if len(nb) > 1:
            raise StructureMismatch(f"city corner {c} has {len(nb)} outside neighbours")
        if nb and g.adj[c][nb[0]] != 1:
            raise StructureMismatch("renewal expects unit connector weights")
        outside[c] = nb[0] if nb else None
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if g.adj[a].get(b) != 1:
            raise StructureMismatch("renewal expects a unit-weight 4-cycle")
    for c in cycle:
        g.remove_node(c)
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        na, nb = outside[a], outside[b]
        if na is not None and nb is not None:
            g.add_edge(na, nb, HALF)
            if sources is not None:
                sources.setdefault(_pair(na, nb), []).append(((tag, a, b), HALF))
    return outside


def _pair(a, b):
    return (a, b) if repr(a) <= repr(b) else (b, a)


def urban_renewal(region: SquareOctRegion) -> RenewedBoard:
    g = region.graph.copy()
    sources: Dict[Tuple, List] = {}
    for a in g.adj:
        for b, w in g.adj[a].items():
            if a[0] == "R" and b[0] == "R" and repr(a) < repr(b):
                sources.setdefault(_pair(a, b), []).append(("rich", w))
    cities = {}
    for p, q in region.poor_cities:
        cyc = [poor(p, q, c) for c in POOR_CYCLE]
        out = renew_city(g, cyc, sources, (p, q))
        cities[(p, q)] = {c[3]: out[c] for c in cyc}
    n = len(region.poor_cities)
    return RenewedBoard(g, RenewalCertificate(n, Fraction(2) ** n), sources, cities)


def gauge_exponent(node) -> int:
    _, i, j, c = node
    return -(i + j) if c in ("TL", "BR") else i + j


def reweight(board: RenewedBoard) -> Tuple[WeightedGraph, Fraction]:
    """Multiply TL/BR corners by 2^(-i-j) and TR/BL by 2^(i+j).

    Returns the new graph and the global constant every matching weight is
    multiplied by (the product of all vertex factors).
    """
    g = WeightedGraph()
    const = Fraction(1)
    for a in board.graph.adj:
        g.add_node(a)
        const *= Fraction(2) ** gauge_exponent(a)
    for a, nb in board.graph.adj.items():
        for b, w in nb.items():
            if repr(a) < repr(b):
                g.add_edge(a, b, w * Fraction(2) ** (gauge_exponent(a) + gauge_exponent(b)))
    return g, const


@dataclass
class FGraph:
    map: PlanarMap
    L: int
    M: int
    v_star: int
    f_star: int
    node_of: Dict[Hashable, Tuple[str, int]]  # board node -> overlay node

    @property
    def outer(self) -> int:
        return self.v_star


def f_graph(L: int, M: int) -> Tuple[PlanarMap, Dict[str, Dict]]:
    """M x L grid, right/down weight 1, left/up 1/4, wired to an outer vertex.

    Returns the map and the lookup tables ``vertex[(i, j)]``,
    ``hedge[(i, j)]`` (edge for TR(i, j)) and ``vedge[(i, j)]``.
    """
    q = Fraction(1, 4)
    vid = {(i, j): i + M * j for j in range(L) for i in range(M)}
    o = L * M
    coords = {v: (i, -j) for (i, j), v in vid.items()}
    edges, root_edges = [], []
    horiz, vert = [], []
    for j in range(L):
        for i in range(-1, M):
            a, b = vid.get((i, j)), vid.get((i + 1, j))
            if a is not None and b is not None:
                horiz.append(((i, j), ("e", len(edges))))
                edges.append((a, b, 1, q))
            elif a is not None:
                horiz.append(((i, j), ("r", len(root_edges))))
                root_edges.append((a, 1, None, (1, 0)))
            else:
                horiz.append(((i, j), ("r", len(root_edges))))
                root_edges.append((b, q, None, (-1, 0)))
    for j in range(-1, L):
        for i in range(M):
            a, b = vid.get((i, j)), vid.get((i, j + 1))
            if a is not None and b is not None:
                vert.append(((i, j), ("e", len(edges))))
                edges.append((a, b, 1, q))
            elif a is not None:
                vert.append(((i, j), ("r", len(root_edges))))
                root_edges.append((a, 1, None, (0, -1)))
            else:
                vert.append(((i, j), ("r", len(root_edges))))
                root_edges.append((b, q, None, (0, 1)))
    coords[o] = None
    m = map_with_root(coords, edges, o, root_edges, outer=(0, 0) if edges else None)
    ne = len(edges)

    def edge_index(ref):
        kind, k = ref
        return k if kind == "e" else ne + k

    # edge list index -> map edge id: one edge per entry, in dart order
    def map_edge(ref):
        return m.edge_of_dart(_first_dart(edge_index(ref), edges, root_edges))

    tables = {
        "vertex": vid,
        "hedge": {key: map_edge(ref) for key, ref in horiz},
        "vedge": {key: map_edge(ref) for key, ref in vert},
        "outer": o,
    }
    return m, tables


def _first_dart(index: int, edges, root_edges) -> int:
    """Dart id of the first dart of entry ``index`` as numbered by map_from_edges."""
    did = 0
    for k, e in enumerate(list(edges) + [(u, None, a, b) for u, a, b, _ in root_edges]):
        if k == index:
            return did
        did += 1 if e[3] is None else 2
    raise IndexError(index)


def derive_F(board: WeightedGraph, L: int, M: int) -> FGraph:
    """Read the renewed, reweighted board as the restricted overlay of F."""
    m, t = f_graph(L, M)
    node_of: Dict[Hashable, Tuple[str, int]] = {}
    for (i, j), v in t["vertex"].items():
        node_of[rich(i, j, "TL")] = (VERTEX, v)
    for (i, j), k in t["hedge"].items():
        node_of[rich(i, j, "TR")] = (EDGE, k)
    for (i, j), k in t["vedge"].items():
        node_of[rich(i, j, "BL")] = (EDGE, k)
    f_star = None
    for j in range(-1, L):
        for i in range(-1, M):
            if (i, j) == (-1, -1):
                continue
            if i >= 0:
                # east of the vertical edge BL(i, j): left of its downward half
                k = t["vedge"][(i, j)]
                h = 2 * k if _goes_down(m, 2 * k, t, i, j) else 2 * k + 1
                f = m.face_of(h)
            else:
                # south of TR(i, j): right of its eastward half
                k = t["hedge"][(i, j)]
                h = 2 * k if _goes_right(m, 2 * k, t, i, j) else 2 * k + 1
                f = m.face_of(h ^ 1)
            node_of[rich(i, j, "BR")] = (FACE, f)
    used = {n[1] for n in node_of.values() if n[0] == FACE}
    rest = set(range(len(m.faces))) - used
    if len(rest) != 1:
        raise StructureMismatch("faces of F do not match the BR corners")
    f_star = rest.pop()
    h = restrict(build_overlay(m), t["outer"], f_star)
    if set(node_of) != set(board.adj) or set(node_of.values()) != set(h.nodes):
        raise StructureMismatch("board nodes do not match the overlay nodes")
    for a, nb in board.adj.items():
        want = {node_of[b]: w for b, w in nb.items() if w != 0}
        have = {b: w for b, w in h.adj[node_of[a]].items() if w != 0}
        if want != have:
            raise StructureMismatch(f"links at {a} differ: {want} vs {have}")
    return FGraph(m, L, M, t["outer"], f_star, node_of)


def _goes_down(m, h, t, i, j) -> bool:
    src = t["vertex"].get((i, j), t["outer"])
    return m.origin(h) == src and m.target(h) == t["vertex"].get((i, j + 1), t["outer"])


def _goes_right(m, h, t, i, j) -> bool:
    src = t["vertex"].get((i, j), t["outer"])
    return m.origin(h) == src and m.target(h) == t["vertex"].get((i + 1, j), t["outer"])


def pipeline(L: int, M: int):
    region = gen_region(L, M)
    renewed = urban_renewal(region)
    g, const = reweight(renewed)
    if const != 1:
        raise StructureMismatch(f"gauge constant {const} != 1")
    return region, renewed, derive_F(g, L, M)


def count_matchings_squareoct(L: int, M: int) -> Fraction:
    m, t = f_graph(L, M)
    return Fraction(2) ** ((L + 1) * (M + 1)) * count_arborescences(m, t["outer"])


def sample_squareoct_matching(L: int, M: int, rng_seed=0, parts=None):
    """Uniform random perfect matching of the order-(L, M) board.

    Draws a tree of F with Wilson's algorithm, maps it to a matching of the
    renewed board, then undoes each urban renewal step: a city none of
    whose half-weight edges is used picks one of its two internal
    matchings with a random bit; otherwise the choice is forced.
    """
    region, renewed, F = parts if parts is not None else pipeline(L, M)
    rng = make_rng(rng_seed)
    tree = WilsonSampler(F.map, F.v_star, rng).sample()
    mt = tree_to_matching(tree, restrict(build_overlay(F.map), F.v_star, F.f_star))
    board_of = {v: k for k, v in F.node_of.items()}
    after = [(board_of[a], board_of[b]) for a, b in mt.pairs]
    pairs = []
    used_by_city: Dict[Tuple[int, int], List[Tuple[str, str]]] = {}
    for a, b in after:
        src = renewed.sources[_pair(a, b)]
        if len(src) == 1:
            s = src[0][0]
        else:
            ws = [float(w) for _, w in src]
            k = int(rng.choice(len(src), p=[w / sum(ws) for w in ws]))
            s = src[k][0]
        if s == "rich":
            pairs.append((a, b))
        else:
            city, ca, cb = s
            used_by_city.setdefault(city, []).append((ca[3], cb[3]))
    for (p, q), out in renewed.cities.items():
        free = list(POOR_CYCLE)
        for ca, cb in used_by_city.get((p, q), []):
            for c in (ca, cb):
                pairs.append((poor(p, q, c), out[c]))
                free.remove(c)
        if len(free) == 4:
            start = int(rng.integers(2))
            cyc = POOR_CYCLE[start:] + POOR_CYCLE[:start]
            pairs += [(poor(p, q, cyc[0]), poor(p, q, cyc[1])),
                      (poor(p, q, cyc[2]), poor(p, q, cyc[3]))]
        elif len(free) == 2:
            pairs.append((poor(p, q, free[0]), poor(p, q, free[1])))
    return pairs
