from collections import Counter
from fractions import Fraction

import pytest
from scipy.stats import chisquare

from temperley.exact_count import count_arborescences, enumerate_matchings, matching_weight_sum
from temperley.square_octagon import (POOR_CYCLE, StructureMismatch, WeightedGraph,
                                      count_matchings_squareoct, f_graph, gen_region, pipeline, poor,
                                      renew_city, reweight, sample_squareoct_matching, urban_renewal)

# (octagons, poor cities, nodes, edges, perfect matchings)
BOARDS = {
    (1, 1): (2, 4, 24, 30, 40),
    (2, 1): (4, 6, 38, 49, 384),
    (1, 2): (4, 6, 38, 49, 384),
    (2, 2): (8, 9, 60, 80, 16800),
}


@pytest.mark.parametrize("order", sorted(BOARDS))
def test_board_shape(order):
    r = gen_region(*order)
    octs, poors, nodes, edges, _ = BOARDS[order]
    assert r.octagon_count() == octs == 2 * order[0] * order[1]
    assert len(r.poor_cities) == poors
    assert (len(r.graph.adj), r.graph.edge_count()) == (nodes, edges)


def test_fig4_board():
    r = gen_region(3, 4)
    assert r.octagon_count() == 24
    assert len(r.poor_cities) == 20


@pytest.mark.parametrize("order", sorted(BOARDS))
def test_renewal_identity(order):
    r = gen_region(*order)
    brute = matching_weight_sum(r.graph)
    assert brute == BOARDS[order][4]
    renewed = urban_renewal(r)
    assert renewed.certificate.factor == 2 ** len(r.poor_cities)
    assert brute == renewed.certificate.factor * matching_weight_sum(renewed.graph)
    L, M = order
    assert brute == 2 ** ((L + 1) * (M + 1)) * count_arborescences(*_f(L, M))
    assert brute == count_matchings_squareoct(L, M)


def _f(L, M):
    m, t = f_graph(L, M)
    return m, t["outer"]


def test_isolated_city():
    g = WeightedGraph()
    cyc = ["a", "b", "c", "d"]
    for x, y in zip(cyc, cyc[1:] + cyc[:1]):
        g.add_edge(x, y)
    assert matching_weight_sum(g) == 2
    renew_city(g, cyc)
    assert g.adj == {}
    assert matching_weight_sum(g) == 1


def test_per_city_factor_two():
    r = gen_region(2, 1)
    g = r.graph.copy()
    before = matching_weight_sum(g)
    for p, q in r.poor_cities:
        renew_city(g, [poor(p, q, c) for c in POOR_CYCLE])
        after = matching_weight_sum(g)
        assert before == 2 * after
        before = after


def test_renewal_rejects_non_city():
    g = WeightedGraph()
    for x, y in [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "x"), ("a", "y")]:
        g.add_edge(x, y)
    with pytest.raises(StructureMismatch):
        renew_city(g, ["a", "b", "c", "d"])


def test_gauge_invariance():
    board = urban_renewal(gen_region(1, 1))
    g, const = reweight(board)
    assert const == 1
    before = {frozenset(map(frozenset, mt.pairs)): mt.weight for mt in enumerate_matchings(board.graph)[0]}
    after = {frozenset(map(frozenset, mt.pairs)): mt.weight for mt in enumerate_matchings(g)[0]}
    assert before.keys() == after.keys()
    ratios = {after[k] / before[k] for k in before}
    assert ratios == {const}
    total_b, total_a = sum(before.values()), sum(after.values())
    assert all(before[k] / total_b == after[k] / total_a for k in before)


def test_reweighted_edges():
    g, _ = reweight(urban_renewal(gen_region(2, 2)))
    # after the gauge only unit links and the quarter-weight up/left darts remain
    weights = Counter(w for a in g.adj for w in g.adj[a].values())
    assert weights == {Fraction(1): 60, Fraction(1, 4): 16}
    # rich-city internal edges end at weight 1
    for a in g.adj:
        for b, w in g.adj[a].items():
            if a[0] == b[0] == "R" and a[1:3] == b[1:3]:
                assert w == 1


def test_f_graph_sizes():
    assert len(f_graph(1, 1)[0].vertices) == 2
    assert len(f_graph(3, 4)[0].vertices) == 13
    _, _, F = pipeline(3, 4)
    assert len(F.map.vertices) == 13


def test_big_board_count():
    assert count_matchings_squareoct(3, 4) == 28295974656


def test_sampler_valid_and_uniform():
    r = gen_region(1, 1)
    parts = pipeline(1, 1)
    every = {frozenset(map(frozenset, mt.pairs)) for mt in enumerate_matchings(r.graph)[0]}
    assert len(every) == 40
    counts = Counter()
    for seed in range(8000):
        pairs = sample_squareoct_matching(1, 1, seed, parts)
        key = frozenset(frozenset(p) for p in pairs)
        counts[key] += 1
    assert set(counts) == every
    assert chisquare(list(counts.values())).pvalue > 0.001


def test_sampler_deterministic():
    a = sample_squareoct_matching(2, 2, 5)
    b = sample_squareoct_matching(2, 2, 5)
    assert a == b
    covered = [x for p in a for x in p]
    assert sorted(covered, key=repr) == sorted(gen_region(2, 2).graph.adj, key=repr)
