from fractions import Fraction

import pytest

from temperley.exact_count import count_arborescences, enumerate_matchings, matching_weight_sum
from temperley.fixtures import FIXTURES, grid, small_fixtures
from temperley.overlay import (EDGE, FACE, VERTEX, UnknownFace, UnknownVertex, build_overlay,
                               node_name, parse_node, restrict)
from temperley.planar_map import map_from_edges


def test_single_edge_overlay(single_edge):
    h = build_overlay(single_edge)
    assert set(h.nodes) == {(VERTEX, 0), (VERTEX, 1), (EDGE, 0), (FACE, 0)}
    assert len(h.links) == 4
    assert h.pair_weight((FACE, 0), (EDGE, 0)) == 2      # both sides of the edge
    assert h.pair_weight((VERTEX, 0), (EDGE, 0)) == 1


def test_directed_weights_on_links():
    m = map_from_edges({0: (0, 0), 1: (1, 0)}, [(0, 1, 5, None)])
    h = build_overlay(m)
    assert h.pair_weight((VERTEX, 0), (EDGE, 0)) == 5
    assert h.pair_weight((VERTEX, 1), (EDGE, 0)) == 0


def test_grid22_sizes(grid22):
    h = build_overlay(grid22)
    assert len(h.nodes) == 10
    assert len(h.links) == 16
    assert (h.count(VERTEX), h.count(EDGE), h.count(FACE)) == (4, 4, 2)


def test_single_edge_restricted(single_edge):
    hr = restrict(build_overlay(single_edge), 1, 0)
    assert set(hr.nodes) == {(VERTEX, 0), (EDGE, 0)}
    ms, total = enumerate_matchings(hr)
    assert len(ms) == 1 and total == 1


def test_restricted_grid22_is_temperley_board(grid22):
    hr = restrict(build_overlay(grid22), 0, grid22.outer_face)
    assert len(hr.nodes) == 8
    ms, total = enumerate_matchings(hr)
    assert total == 4 and len(ms) == 4
    cells = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    board = sorted(sum(1 for c in cells if abs(c[0] - x) + abs(c[1] - y) == 1) for x, y in cells)
    assert sorted(len(hr.adj[n]) for n in hr.nodes) == board == [2, 2, 2, 2, 2, 3, 3, 4]


def test_incident_flag(grid22):
    h = build_overlay(grid22)
    for f in range(2):
        assert restrict(h, 0, f).incident_flag
    g = grid(3, 3)
    assert not restrict(build_overlay(g), 4, g.outer_face).incident_flag


def test_restrict_unknown(grid22):
    h = build_overlay(grid22)
    with pytest.raises(UnknownVertex):
        restrict(h, 99, 0)
    with pytest.raises(UnknownFace):
        restrict(h, 0, 7)


def test_balanced_bipartite():
    for m in small_fixtures().values():
        h = build_overlay(m)
        for v in m.vertices:
            for f in range(len(m.faces)):
                hr = restrict(h, v, f)
                edge_side = sum(1 for n in hr.nodes if n[0] == EDGE)
                assert edge_side == len(hr.nodes) - edge_side
                for a in hr.nodes:
                    for b in hr.adj[a]:
                        assert (a[0] == EDGE) != (b[0] == EDGE)


def test_pendant_one_way_has_zero_matchings():
    # the pendant vertex 2 can only be entered, never left: no tree, zero matching sum
    m = map_from_edges({0: (0, 0), 1: (1, 0), 2: (2, 0)}, [(0, 1, 1, 1), (1, 2, 1, None)])
    hr = restrict(build_overlay(m), 0, 0)
    assert count_arborescences(m, 0) == 0
    assert matching_weight_sum(hr) == 0


def test_node_names():
    for n in [(VERTEX, 3), (EDGE, 0), (FACE, 12)]:
        assert parse_node(node_name(n)) == n
    assert node_name((FACE, 2)) == "f:2"


def test_overlay_text(grid22):
    text = restrict(build_overlay(grid22), 0, 1).to_text()
    lines = text.splitlines()
    assert lines[0] == "node v:1"
    assert lines[-1] == "deleted v:0 f:1"
    assert sum(1 for ln in lines if ln.startswith("link ")) == 16 - 2 - 4


# -- odd-region invariant -------------------------------------------------

def _simple_cycles(m):
    adj = {v: set() for v in m.vertices}
    for k in range(len(m.edges)):
        a, b = m.edge_endpoints(k)
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    seen = set()
    out = []

    def dfs(start, v, path):
        for w in sorted(adj[v]):
            if w == start and len(path) >= 3:
                key = frozenset(path)
                if (key, len(path)) not in seen:
                    seen.add((key, len(path)))
                    out.append(list(path))
            elif w > start and w not in path:
                dfs(start, w, path + [w])

    for s in m.vertices:
        dfs(s, s, [s])
    return out


def _inside(poly, p):
    """+1 strictly inside, 0 on the boundary, -1 outside (even-odd rule)."""
    x, y = p
    n = len(poly)
    inside = False
    for i in range(n):
        (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % n]
        if (x2 - x1) * (y - y1) == (y2 - y1) * (x - x1) and min(x1, x2) <= x <= max(x1, x2) \
                and min(y1, y2) <= y <= max(y1, y2):
            return 0
        if (y1 > y) != (y2 > y):
            xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xi > x:
                inside = not inside
    return 1 if inside else -1


@pytest.mark.parametrize("name", ["c4", "grid23", "grid33", "k4", "pendant", "one_way_square"])
def test_odd_region(name):
    m = FIXTURES[name]()
    pos = {v: tuple(map(Fraction, m.coords[v])) for v in m.vertices}
    checked = 0
    for cyc in _simple_cycles(m):
        poly = [pos[v] for v in cyc]
        pts = [pos[v] for v in m.vertices]
        pts += [tuple((a + b) / 2 for a, b in zip(*(pos[x] for x in m.edge_endpoints(k))))
                for k in range(len(m.edges))]
        for f, walk in enumerate(m.faces):
            if f != m.outer_face:
                cs = [pos[m.origin(h)] for h in walk]
                pts.append((sum(c[0] for c in cs) / len(cs), sum(c[1] for c in cs) / len(cs)))
        inside = sum(1 for p in pts if _inside(poly, p) == 1)
        assert inside % 2 == 1, (cyc, inside)
        checked += 1
    assert checked > 0
