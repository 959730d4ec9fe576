from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from temperley.exact_count import count_arborescences
from temperley.fixtures import FIXTURES, grid, two_parallel
from temperley.planar_map import (Dart, EulerViolation, MapError, NotConnected, ParseError, PlanarMap,
                                  RotationMismatch, dual, format_map, map_from_edges,
                                  merge_parallel_darts, parse_map)


def test_single_vertex():
    m = PlanarMap([0], [], {0: []})
    assert len(m.faces) == 1
    assert m.euler_characteristic() == 2


def test_single_edge_one_face(single_edge):
    assert len(single_edge.faces) == 1
    assert len(single_edge.faces[0]) == 2


def test_grid22_faces(grid22):
    assert len(grid22.faces) == 2
    assert sorted(len(w) for w in grid22.faces) == [4, 4]
    # the outer face walks the square clockwise, so its signed area is negative
    walk = grid22.faces[grid22.outer_face]
    area = sum(grid22.coords[grid22.origin(h)][0] * grid22.coords[grid22.target(h)][1]
               - grid22.coords[grid22.target(h)][0] * grid22.coords[grid22.origin(h)][1] for h in walk)
    assert area < 0


def test_faces_are_on_the_left(grid22):
    for h in range(grid22.num_halfedges):
        n = grid22.next_he(h)
        assert grid22.origin(n) == grid22.target(h)
        assert grid22.face_of(n) == grid22.face_of(h)
        assert grid22.prev_he(n) == h


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_euler(name):
    assert FIXTURES[name]().euler_characteristic() == 2


def test_disconnected_rejected():
    with pytest.raises(NotConnected):
        PlanarMap([0, 1], [], {0: [], 1: []})


def test_bad_rotation_rejected():
    darts = [Dart(0, 0, 1, 1, 1), Dart(1, 1, 0, 1, 0)]
    with pytest.raises(RotationMismatch):
        PlanarMap([0, 1], darts, {0: ["0"], 1: ["0"]})


def test_non_planar_rotation_is_euler_violation():
    # K4 with a rotation system of genus one
    k = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    darts = []
    for i, (a, b) in enumerate(k):
        darts += [Dart(2 * i, a, b, 1, 2 * i + 1), Dart(2 * i + 1, b, a, 1, 2 * i)]
    # vertex 0 is reversed relative to the planar drawing
    rot = {0: ["0", "4", "2"], 1: ["1", "6", "8"], 2: ["3", "7", "10"], 3: ["5", "9", "11"]}
    with pytest.raises(EulerViolation):
        PlanarMap(range(4), darts, rot)


def test_dual_single_edge(single_edge):
    d = dual(single_edge).map
    assert len(d.vertices) == 1
    assert len(d.edges) == 1
    assert d.edge_endpoints(0) == (0, 0)


def test_dual_grid22(grid22):
    d = dual(grid22).map
    assert len(d.vertices) == 2
    assert len(d.edges) == 4
    assert all(set(d.edge_endpoints(k)) == {0, 1} for k in range(4))


@pytest.mark.parametrize("name", ["c4", "grid23", "k4", "pendant", "directed_triangle"])
def test_dual_of_dual(name):
    m = FIXTURES[name]()
    dd = dual(dual(m).map).map
    assert len(dd.vertices) == len(m.vertices)
    assert len(dd.edges) == len(m.edges)
    assert sorted(map(len, dd.faces)) == sorted(map(len, m.faces))


def test_merge_two_parallel():
    m = two_parallel(2, 1)
    merged = merge_parallel_darts(m)
    assert len(merged.darts) == 1
    assert next(iter(merged.darts.values())).weight == 3
    assert count_arborescences(m, 1) == count_arborescences(merged, 1) == 3


def test_merge_three_unit_darts():
    darts = [Dart(i, 0, 1, 1) for i in range(3)]
    m = PlanarMap([0, 1], darts, {0: ["0", "1", "2"], 1: ["~2", "~1", "~0"]})
    merged = merge_parallel_darts(m)
    assert [d.weight for d in merged.darts.values()] == [3]
    assert count_arborescences(m, 1) == count_arborescences(merged, 1) == 3


def test_merge_without_parallels_is_identity(grid22):
    assert merge_parallel_darts(grid22) is grid22


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_text_round_trip(name):
    m = FIXTURES[name]()
    text = format_map(m)
    again = parse_map(text)
    assert format_map(again) == text
    assert again.faces == m.faces
    assert again.outer_face == m.outer_face


def test_parse_reports_line_of_duplicate():
    text = "vertex 0\nvertex 1\nvertex 0\n"
    with pytest.raises(ParseError) as exc:
        parse_map(text)
    assert exc.value.line == 3


def test_parse_duplicate_dart():
    text = "vertex 0\nvertex 1\ndart 0 0 1 1\ndart 0 1 0 1\n"
    with pytest.raises(ParseError) as exc:
        parse_map(text)
    assert exc.value.line == 4


def test_parse_rationals_and_comments():
    text = "# two vertices\nvertex 0 1/2 0\nvertex 1 3/2 0\ndart 0 0 1 2/3 twin=1\ndart 1 1 0 1\nrot 0 0\nrot 1 1\n"
    m = parse_map(text)
    assert m.coords[0] == (Fraction(1, 2), 0)
    assert m.darts[0].weight == Fraction(2, 3)
    assert m.darts[1].twin == 0


def test_negative_weight_rejected():
    with pytest.raises(MapError):
        PlanarMap([0, 1], [Dart(0, 0, 1, -1)], {0: ["0"], 1: ["~0"]})


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4))
def test_grid_euler_and_edge_count(l, m):
    g = grid(l, m)
    assert len(g.edges) == l * (m - 1) + m * (l - 1)
    assert len(g.faces) == (l - 1) * (m - 1) + 1
