"""Acceptance criteria 1-12, one test each.

Every test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary (see conftest.py) and by running this file directly.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy.stats import chisquare

from temperley import verify
from temperley.closed_form import FORMULAS, diamond_product, hex_product, rect_product
from temperley.exact_count import count_arborescences, enumerate_arborescences, matching_weight_sum
from temperley.fixtures import grid, two_parallel
from temperley.regions import hex_T
from temperley.sampler import WilsonSampler, loop_erased_walk
from temperley.square_octagon import WeightedGraph

RESULTS = {}


def record(n, ok, detail):
    RESULTS[n] = (ok, detail)
    assert ok, detail


def board(w, h, missing=()):
    """Plain domino board: cells of a w x h rectangle, unit links between neighbours."""
    g = WeightedGraph()
    cells = {(x, y) for x in range(w) for y in range(h)} - set(missing)
    for x, y in cells:
        g.add_node((x, y))
        for q in ((x + 1, y), (x, y + 1)):
            if q in cells:
                g.add_edge((x, y), q)
    return g


def test_1_theorem_one_counts():
    t0 = time.perf_counter()
    ok, detail = verify.theorem_one(max_vertices=6)
    dt = time.perf_counter() - t0
    record(1, ok and dt < 60, f"{detail}, {dt:.2f}s")


def test_2_bijection_round_trip():
    record(2, *verify.round_trip(max_vertices=6))


def test_3_temperley_rectangles():
    for l in (1, 2, 3):
        for m in (1, 2, 3):
            brute = matching_weight_sum(board(2 * l - 1, 2 * m - 1, {(0, 0)}))
            trees = count_arborescences(grid(l, m), 0)
            form = rect_product("odd_odd_corner", l, m).rounded
            if not brute == trees == form:
                record(3, False, f"({l},{m}): board {brute}, trees {trees}, formula {form}")
    two = matching_weight_sum(board(3, 3, {(0, 0)}))
    record(3, two == 4, f"all nine agree; l=m=2 gives {two}")


def test_4_even_even():
    form = FORMULAS["even_even"](1, 1).rounded
    brute = matching_weight_sum(board(2, 2))
    record(4, form == brute == 2, f"formula {form}, 2x2 board {brute}")


def test_5_urban_renewal():
    record(5, *verify.urban_renewal(((1, 1), (2, 1), (1, 2), (2, 2))))


def test_6_wilson():
    g = grid(2, 3)
    trees, _ = enumerate_arborescences(g, 0, include_zero=False)
    index = {t: i for i, t in enumerate(trees)}
    s = WilsonSampler(g, 0, 20240601)
    counts = np.zeros(len(trees))
    for _ in range(20000):
        counts[index[s.sample()]] += 1
    p = chisquare(counts).pvalue

    m = two_parallel(2, 1)
    n = 10000
    first = sum(loop_erased_walk(m, 0, {1}, rng_seed=seed) == [0] for seed in range(n))
    sigma = math.sqrt(n * 2 / 3 / 3)
    within = abs(first - n * 2 / 3) < 3 * sigma and abs((n - first) - n / 3) < 3 * sigma

    s1, s2 = WilsonSampler(g, 0, 99), WilsonSampler(g, 0, 99)
    replay = [s1.sample().to_text() for _ in range(50)] == [s2.sample().to_text() for _ in range(50)]
    ok = len(trees) == 15 and p > 0.001 and within and replay
    record(6, ok, f"15 trees, chi-square p = {p:.3f}; dart-0 frequency {first / n:.4f}; replay {replay}")


def test_7_return_constant():
    record(7, *verify.return_const())


def test_8_diamond_ratio():
    record(8, *verify.diamond_ratio())


def test_9_hex():
    rows = []
    ok = True
    for m in (1, 2, 3):
        r = hex_T(m)
        exact = count_arborescences(r.map, r.v_star)
        res = hex_product(m)
        ok &= exact == res.rounded and res.margin < 1e-6
        rows.append(f"m={m}: {res.rounded}")
    ok &= hex_product(1).rounded == 26
    record(9, ok, ", ".join(rows))


def test_10_winding_and_loops():
    ok, detail = verify.winding(trees=50, seed=2024)
    # compute_heights rejects any constraint that does not close, so each field is loop-consistent
    record(10, ok, detail + ", all height constraints consistent")


def test_11_twelve_six_four():
    record(11, *verify.twelve_six_four())


def test_12_eigenvectors():
    record(12, *verify.eigenvectors(("rect_tree", "even_odd", "even_even"), size=3, tol=1e-12))


if __name__ == "__main__":
    import sys

    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass
    for n in range(1, 13):
        ok, detail = RESULTS.get(n, (False, "not run"))
        print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    sys.exit(0 if all(RESULTS.get(n, (False,))[0] for n in range(1, 13)) else 1)
