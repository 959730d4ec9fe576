from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from temperley.bijection import (Arborescence, BijectionError, CycleDetected, NotIncident, NotPerfect,
                                 PerfectMatching, RootMismatch, dual_tree, matching_from_partner,
                                 matching_to_tree, parse_matching, parse_tree, rebase_matching,
                                 tree_to_matching)
from temperley.exact_count import enumerate_arborescences, enumerate_matchings
from temperley.fixtures import FIXTURES, grid, small_fixtures
from temperley.overlay import EDGE, FACE, VERTEX, build_overlay, restrict
from temperley.sampler import WilsonSampler


def test_single_edge(single_edge):
    hr = restrict(build_overlay(single_edge), 1, 0)
    t = Arborescence.from_halfedges(1, {0: 0})
    mt = tree_to_matching(t, hr)
    assert mt.partner() == {(VERTEX, 0): (EDGE, 0), (EDGE, 0): (VERTEX, 0)}
    assert mt.weight == t.weight(single_edge) == 1
    assert matching_to_tree(mt, hr) == t
    assert dual_tree(t, single_edge, 0).out_dual == ()


def test_grid22_trees_give_the_four_board_matchings(grid22):
    hr = restrict(build_overlay(grid22), 0, grid22.outer_face)
    trees, _ = enumerate_arborescences(grid22, 0)
    images = {tree_to_matching(t, hr) for t in trees}
    assert len(trees) == len(images) == 4
    assert images == set(enumerate_matchings(hr)[0])
    for mt in images:
        assert tree_to_matching(matching_to_tree(mt, hr), hr) == mt


def test_dual_tree_is_complement(grid22):
    trees, _ = enumerate_arborescences(grid22, 0)
    for t in trees:
        d = dual_tree(t, grid22, grid22.outer_face)
        assert len(d.out_dual) == 1
        assert d.edges() | t.edges() == set(range(4))
        assert not d.edges() & t.edges()
        f, h = d.out_dual[0]
        assert grid22.face_of(h) == f != grid22.outer_face


@pytest.mark.parametrize("name", sorted(small_fixtures()))
def test_weights_preserved_and_injective(name):
    m = FIXTURES[name]()
    h = build_overlay(m)
    for v in m.vertices:
        trees, _ = enumerate_arborescences(m, v)
        for f in range(len(m.faces)):
            if not m.is_incident(v, f):
                continue
            hr = restrict(h, v, f)
            images = [tree_to_matching(t, hr) for t in trees]
            assert len(set(images)) == len(trees)
            assert all(mt.weight == t.weight(m) for mt, t in zip(images, trees))


def test_cycle_detected_when_not_incident():
    g = grid(3, 3)
    hr = restrict(build_overlay(g), 4, g.outer_face)
    assert not hr.incident_flag
    hits = 0
    for mt in enumerate_matchings(hr)[0]:
        try:
            matching_to_tree(mt, hr)
        except CycleDetected:
            hits += 1
    assert hits > 0


def test_root_mismatch(grid22):
    hr = restrict(build_overlay(grid22), 0, 1)
    t = enumerate_arborescences(grid22, 3)[0][0]
    with pytest.raises(RootMismatch):
        tree_to_matching(t, hr)


def test_unrestricted_overlay_rejected(grid22):
    t = enumerate_arborescences(grid22, 0)[0][0]
    with pytest.raises(BijectionError):
        tree_to_matching(t, build_overlay(grid22))


def test_not_perfect(grid22):
    hr = restrict(build_overlay(grid22), 0, 1)
    with pytest.raises(NotPerfect):
        matching_from_partner(hr, {(VERTEX, 1): (EDGE, 0), (EDGE, 0): (VERTEX, 1)})


def test_text_round_trip(grid22):
    hr = restrict(build_overlay(grid22), 0, 1)
    for mt in enumerate_matchings(hr)[0]:
        assert parse_matching(mt.to_text()) == mt
    for t in enumerate_arborescences(grid22, 0)[0]:
        assert parse_tree(t.to_text()) == t


def test_matching_text_format():
    mt = PerfectMatching.from_pairs([((EDGE, 1), (VERTEX, 0)), ((FACE, 0), (EDGE, 0))], Fraction(3, 2))
    assert mt.to_text() == "pair e:0 f:0\npair e:1 v:0\nweight 3/2\n"


# -- rebase ------------------------------------------------------------------

def test_rebase_identity(grid22):
    h = build_overlay(grid22)
    hr = restrict(h, 0, 1)
    for mt in enumerate_matchings(hr)[0]:
        assert rebase_matching(mt, (0, 1), (0, 1), h) == mt


def test_rebase_single_edge(single_edge):
    h = build_overlay(single_edge)
    mt = enumerate_matchings(restrict(h, 0, 0))[0][0]
    new = rebase_matching(mt, (0, 0), (1, 0), h)
    assert new == enumerate_matchings(restrict(h, 1, 0))[0][0]


def test_rebase_is_bijection_on_grid22(grid22):
    h = build_overlay(grid22)
    outer = grid22.outer_face
    for a in grid22.vertices:
        for b in grid22.vertices:
            src = enumerate_matchings(restrict(h, a, outer))[0]
            dst = set(enumerate_matchings(restrict(h, b, outer))[0])
            images = {rebase_matching(mt, (a, outer), (b, outer), h) for mt in src}
            assert images == dst


def test_rebase_agrees_with_rerooting():
    # sliding the vertex chain reverses the tree path from the new root to the old
    g = grid(3, 3)
    h = build_overlay(g)
    outer = g.outer_face
    s = WilsonSampler(g, 0, 11)
    for _ in range(20):
        t = s.sample()
        mt = tree_to_matching(t, restrict(h, 0, outer))
        new = rebase_matching(mt, (0, outer), (2, outer), h)
        t2 = matching_to_tree(new, restrict(h, 2, outer))
        out, out2 = t.as_dict(), t2.as_dict()
        path = [2]
        while path[-1] != 0:
            path.append(g.target(out[path[-1]]))
        for u, w in zip(path, path[1:]):
            assert g.target(out2[w]) == u
        for v in set(g.vertices) - set(path):
            assert out2[v] == out[v]


def test_rebase_needs_incident_pairs():
    g = grid(3, 3)
    h = build_overlay(g)
    mt = enumerate_matchings(restrict(h, 0, g.outer_face), limit=100)[0][0]
    with pytest.raises(NotIncident):
        rebase_matching(mt, (0, g.outer_face), (4, g.outer_face), h)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_round_trip_random_trees(seed):
    # interior root and one of its bounded faces
    g = grid(4, 3)
    face = g.face_of(g.rotation[5][0])
    hr = restrict(build_overlay(g), 5, face)
    t = WilsonSampler(g, 5, seed).sample()
    mt = tree_to_matching(t, hr)
    assert matching_to_tree(mt, hr) == t
