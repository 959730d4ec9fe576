import math
import zlib
from collections import Counter

import numpy as np
import pytest
from scipy.stats import chisquare

from temperley.bijection import NotIncident
from temperley.exact_count import enumerate_arborescences, enumerate_matchings
from temperley.fixtures import FIXTURES, c4, grid, two_parallel
from temperley.overlay import build_overlay, restrict
from temperley.planar_map import map_from_edges
from temperley.sampler import (SamplerStats, Unreachable, WalkPolicy, WilsonSampler, loop_erased_walk,
                               make_rng, return_constant, return_constant_agm, return_constant_integral,
                               return_terms, sample_matching, wilson_sample)
from temperley.square_octagon import f_graph

N = 20000


def _chi2_against_weights(m, root, seed, n=N):
    trees, _ = enumerate_arborescences(m, root, include_zero=False)
    weights = np.array([float(t.weight(m)) for t in trees])
    index = {t: i for i, t in enumerate(trees)}
    s = WilsonSampler(m, root, seed)
    counts = np.zeros(len(trees))
    for _ in range(n):
        counts[index[s.sample()]] += 1
    return chisquare(counts, weights / weights.sum() * n).pvalue, counts


def test_single_dart_path(single_edge):
    assert loop_erased_walk(single_edge, 0, {1}, rng_seed=3) == [0]


def test_parallel_darts_frequency():
    m = two_parallel(2, 1)
    hits = sum(loop_erased_walk(m, 0, {1}, rng_seed=s) == [0] for s in range(10000))
    sigma = math.sqrt(10000 * 2 / 3 * 1 / 3)
    assert abs(hits - 10000 * 2 / 3) < 3 * sigma


def test_walk_policy_probabilities():
    p = WalkPolicy.of(two_parallel(2, 1)).probabilities(0)
    assert p == pytest.approx({0: 2 / 3, 1: 1 / 3})
    assert WalkPolicy.of(two_parallel(2, 1)).probabilities(1) == {}


def test_f_graph_step_distribution():
    m, t = f_graph(3, 3)
    v = t["vertex"][(1, 1)]            # an interior vertex of F
    probs = WalkPolicy.of(m).probabilities(v)
    assert sorted(probs.values()) == pytest.approx([0.1, 0.1, 0.4, 0.4])


def test_zero_weight_darts_excluded():
    m = map_from_edges({0: (0, 0), 1: (1, 0)}, [(0, 1, 0, 1)])
    assert WalkPolicy.of(m).darts[0] == ()
    with pytest.raises(Unreachable):
        wilson_sample(m, 1, 0)


def test_unreachable_start():
    m = two_parallel()
    with pytest.raises(Unreachable):
        loop_erased_walk(m, 1, {0})
    with pytest.raises(Unreachable):
        WilsonSampler(m, 0)


@pytest.mark.parametrize("name,root", [("c4", 0), ("grid23", 0), ("two_parallel", 1),
                                       ("directed_triangle", 0), ("pendant", 0), ("one_way_square", 0)])
def test_distribution_chi_square(name, root):
    p, counts = _chi2_against_weights(FIXTURES[name](), root, seed=zlib.crc32(name.encode()))
    assert p > 0.001
    assert (counts > 0).all()


def test_grid23_sees_all_15():
    _, counts = _chi2_against_weights(grid(2, 3), 0, seed=1, n=3000)
    assert len(counts) == 15 and (counts > 0).all()


def test_determinism():
    m = grid(3, 3)
    a = [wilson_sample(m, 0, 42)[0] for _ in range(3)]
    assert a[0] == a[1] == a[2]
    s1, s2 = WilsonSampler(m, 0, 7), WilsonSampler(m, 0, 7)
    assert [s1.sample().to_text() for _ in range(20)] == [s2.sample().to_text() for _ in range(20)]
    assert s1.stats == s2.stats


def test_frozen_stream():
    # Philox keeps seed-to-sample stable across platforms
    s = WilsonSampler(grid(2, 3), 0, 1)
    for _ in range(3000):
        s.sample()
    assert s.stats.line() == "steps=36188 trees=3000"


def test_stats_monotone():
    s = WilsonSampler(grid(3, 3), 0, 5)
    last = -1
    for i in range(10):
        s.sample()
        assert s.stats.trees_drawn == i + 1
        assert s.stats.total_steps >= last
        last = s.stats.total_steps
    assert SamplerStats(3, 1).line() == "steps=3 trees=1"


def test_make_rng_passes_generator_through():
    g = make_rng(3)
    assert make_rng(g) is g


def test_sample_matching_single_edge(single_edge):
    mt = sample_matching(single_edge, 1, 0, 9)
    assert mt == enumerate_matchings(restrict(build_overlay(single_edge), 1, 0))[0][0]


def test_sample_matching_board_uniform(grid22):
    hr = restrict(build_overlay(grid22), 0, grid22.outer_face)
    all_m = enumerate_matchings(hr)[0]
    counts = Counter(sample_matching(grid22, 0, grid22.outer_face, s) for s in range(4000))
    assert set(counts) == set(all_m)
    assert chisquare([counts[x] for x in all_m]).pvalue > 0.001


def test_sample_matching_not_incident():
    g = grid(3, 3)
    with pytest.raises(NotIncident):
        sample_matching(g, 4, g.outer_face, 0)


def test_step_count_below_bound():
    for L in (8, 10):
        m, t = f_graph(L, L)
        s = WilsonSampler(m, t["outer"], L)
        for _ in range(200):
            s.sample()
        per_vertex = s.stats.total_steps / 200 / (len(m.vertices) - 1)
        assert per_vertex < 1.4


def test_return_constant():
    assert return_constant(max_terms=1) == 1.0
    assert return_terms(3) == [1.0, 4 / 25, 36 / 625]
    r = return_constant()
    assert abs(r - 1.27025) < 5e-5
    assert r == pytest.approx(1.2702492000301702, abs=1e-12)
    assert abs(r - return_constant_agm()) < 1e-9
    assert abs(return_constant_integral() - r) < 1e-6
