"""Small named maps used by the tests, the CLI and ``verify``."""

from __future__ import annotations

from typing import Callable, Dict

from .planar_map import Dart, PlanarMap, map_from_edges


def grid(l: int, m: int, w=1) -> PlanarMap:
    """l columns by m rows at integer points, vertex x + l*y, outer face outside."""
    coords = {x + l * y: (x, y) for y in range(m) for x in range(l)}
    edges = []
    for y in range(m):
        for x in range(l):
            v = x + l * y
            if x + 1 < l:
                edges.append((v, v + 1, w, w))
            if y + 1 < m:
                edges.append((v, v + l, w, w))
    if not edges:
        return PlanarMap(coords.keys(), [], {v: [] for v in coords}, coords=coords)
    return map_from_edges(coords, edges, outer=(0, 1))


def c4() -> PlanarMap:
    return map_from_edges({0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)},
                          [(0, 1, 1, 1), (1, 2, 1, 1), (2, 3, 1, 1), (3, 0, 1, 1)], outer=(0, 1))


def two_parallel(w1=2, w2=1) -> PlanarMap:
    """Vertices 0, 1 and one-way darts 0 -> 1 of weights w1 (id 0) and w2 (id 1)."""
    darts = [Dart(0, 0, 1, w1), Dart(1, 0, 1, w2)]
    return PlanarMap([0, 1], darts, {0: ["0", "1"], 1: ["~1", "~0"]}, outer="0",
                     coords={0: (0, 0), 1: (1, 0)})


def directed_triangle() -> PlanarMap:
    """Triangle with a one-way cycle 0 -> 1 -> 2 -> 0 and unequal reverse weights."""
    return map_from_edges({0: (0, 0), 1: (2, 0), 2: (1, 2)},
                          [(0, 1, 1, 3), (1, 2, 2, None), (2, 0, 1, 1)], outer=(0, 1))


def k4() -> PlanarMap:
    """K4 drawn with vertex 3 inside, mixed weights."""
    coords = {0: (0, 0), 1: (4, 0), 2: (2, 4), 3: (2, 1)}
    edges = [(0, 1, 1, 2), (1, 2, 1, 1), (2, 0, 3, 1), (0, 3, 1, 1), (1, 3, 2, 1), (2, 3, 1, 5)]
    return map_from_edges(coords, edges, outer=(0, 1))


def pendant() -> PlanarMap:
    """Square 0-1-2-3 with a pendant vertex 4 hanging inside off vertex 0."""
    coords = {0: (0, 0), 1: (2, 0), 2: (2, 2), 3: (0, 2), 4: (1, 1)}
    edges = [(0, 1, 1, 1), (1, 2, 1, 1), (2, 3, 1, 1), (3, 0, 1, 1), (0, 4, 2, 1)]
    return map_from_edges(coords, edges, outer=(0, 1))


def one_way_square() -> PlanarMap:
    """Square with a diagonal where two sides are one-way streets."""
    coords = {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}
    edges = [(0, 1, 1, None), (1, 2, 1, 1), (2, 3, 2, None), (3, 0, 1, 1), (0, 2, 1, 3)]
    return map_from_edges(coords, edges, outer=(0, 1))


def loop_triangle() -> PlanarMap:
    """Triangle with mixed weights and a self-loop at vertex 0 drawn inside it."""
    darts = [Dart(0, 0, 1, 1, 1), Dart(1, 1, 0, 2, 0), Dart(2, 1, 2, 1, 3), Dart(3, 2, 1, 1, 2),
             Dart(4, 2, 0, 3, 5), Dart(5, 0, 2, 1, 4), Dart(6, 0, 0, 1, 7), Dart(7, 0, 0, 1, 6)]
    rot = {0: ["0", "6", "7", "5"], 1: ["2", "1"], 2: ["4", "3"]}
    return PlanarMap([0, 1, 2], darts, rot, coords={0: (0, 0), 1: (2, 0), 2: (1, 2)})


FIXTURES: Dict[str, Callable[[], PlanarMap]] = {
    "c4": c4,
    "grid22": lambda: grid(2, 2),
    "grid23": lambda: grid(2, 3),
    "grid33": lambda: grid(3, 3),
    "two_parallel": two_parallel,
    "directed_triangle": directed_triangle,
    "k4": k4,
    "pendant": pendant,
    "one_way_square": one_way_square,
    "loop_triangle": loop_triangle,
}


def small_fixtures(max_vertices: int = 6) -> Dict[str, PlanarMap]:
    out = {}
    for name, fn in FIXTURES.items():
        m = fn()
        if len(m.vertices) <= max_vertices:
            out[name] = m
    return out
