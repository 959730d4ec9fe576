"""Cross-checks shared by ``temperley verify`` and the acceptance tests.

Each check returns ``(ok, detail)``; ``run_checks`` collects them as
``(name, ok, detail)`` triples.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from . import closed_form, exact_count, fixtures, regions, square_octagon
from .bijection import matching_to_tree, tree_to_matching
from .heights import compute_heights, winding_heights, winding_turns
from .overlay import build_overlay, restrict
from .sampler import WilsonSampler, return_constant, return_constant_agm

Check = Tuple[bool, str]


def theorem_one(max_vertices: int = 6) -> Check:
    pairs = 0
    for name, m in fixtures.small_fixtures(max_vertices).items():
        h = build_overlay(m)
        for v in m.vertices:
            trees = exact_count.count_arborescences(m, v)
            for f in range(len(m.faces)):
                if not m.is_incident(v, f):
                    continue
                s = exact_count.matching_weight_sum(restrict(h, v, f))
                if s != trees:
                    return False, f"{name} v*={v} f*={f}: matchings {s} != trees {trees}"
                pairs += 1
    return True, f"{pairs} incident pairs"


def round_trip(max_vertices: int = 6) -> Check:
    n = 0
    for name, m in fixtures.small_fixtures(max_vertices).items():
        h = build_overlay(m)
        for v in m.vertices:
            trees, _ = exact_count.enumerate_arborescences(m, v)
            for f in range(len(m.faces)):
                if not m.is_incident(v, f):
                    continue
                hr = restrict(h, v, f)
                matchings, _ = exact_count.enumerate_matchings(hr)
                image = set()
                for t in trees:
                    mt = tree_to_matching(t, hr)
                    if mt.weight != t.weight(m) or matching_to_tree(mt, hr) != t:
                        return False, f"{name} v*={v} f*={f}: tree round trip broke"
                    image.add(mt)
                if image != set(matchings):
                    return False, f"{name} v*={v} f*={f}: image is not all matchings"
                for mt in matchings:
                    if tree_to_matching(matching_to_tree(mt, hr), hr) != mt:
                        return False, f"{name} v*={v} f*={f}: matching round trip broke"
                n += len(trees)
    return True, f"{n} trees"


def region_agreement(family: str, params: Tuple[int, ...]) -> Tuple[bool, str, int]:
    """Closed form = Matrix-Tree count = overlay matching sum on one region."""
    r = regions.generate(family, *params) if len(params) == 2 else regions.generate(family, m=params[0])
    trees = exact_count.count_arborescences(r.map, r.v_star)
    form = closed_form.FORMULAS[regions.FORMULA_OF[family]](*((params if len(params) == 2 else (None,) + params)))
    match = exact_count.matching_weight_sum(restrict(build_overlay(r.map), r.v_star, r.f_star))
    ok = trees == form.rounded == match and form.margin < 1e-6
    return ok, f"{family}{params}: formula {form.rounded} trees {trees} matchings {match}", form.rounded


def rectangles() -> Check:
    for l in (1, 2, 3):
        for m in (1, 2, 3):
            ok, detail, _ = region_agreement("rect_tree", (l, m))
            if not ok:
                return False, detail
    return True, "l, m in 1..3"


def even_even_base() -> Check:
    ok, detail, v = region_agreement("even_even", (1, 1))
    return ok and v == 2, detail


def urban_renewal(orders=((1, 1), (2, 1), (1, 2), (2, 2))) -> Check:
    for L, M in orders:
        region = square_octagon.gen_region(L, M)
        brute = exact_count.matching_weight_sum(region.graph)
        fast = square_octagon.count_matchings_squareoct(L, M)
        if brute != fast:
            return False, f"({L},{M}): board {brute} != 2^n trees(F) {fast}"
    return True, ", ".join(f"({L},{M})" for L, M in orders)


def return_const() -> Check:
    r, agm = return_constant(), return_constant_agm()
    ok = abs(r - 1.27025) < 5e-5 and abs(r - agm) < 1e-9
    return ok, f"R = {r:.12f}, agm {agm:.12f}"


def diamond_ratio() -> Check:
    for l in range(1, 5):
        for m in range(1, 5):
            a = closed_form.diamond_product("diamond", l, m).rounded
            b = closed_form.diamond_product("diamond2", l, m).rounded
            if a != 4 * b:
                return False, f"({l},{m}): {a} != 4 * {b}"
    return True, "l, m in 1..4"


def hex_region() -> Check:
    for m in (1, 2, 3):
        ok, detail, v = region_agreement("hex_T", (m,))
        if not ok or (m == 1 and v != 26):
            return False, detail
    return True, "m in 1..3"


def winding(trees: int = 50, seed: int = 2024) -> Check:
    import random

    m = fixtures.grid(4, 4)
    h = restrict(build_overlay(m), 0, m.outer_face)
    s = WilsonSampler(m, 0, seed)
    rnd = random.Random(seed)
    pairs = 0
    for _ in range(trees):
        t = s.sample()
        field = compute_heights(tree_to_matching(t, h), h)
        out = t.as_dict()
        for _ in range(5):
            frm = rnd.choice([v for v in m.vertices if v != 0])
            anc = [frm]
            while anc[-1] != 0:
                anc.append(m.target(out[anc[-1]]))
            to = rnd.choice(anc[1:])
            # at the root the path needs an explicit continuation
            cont = None if to != 0 else rnd.choice([g for g in m.rotation[0] if g != out[anc[-2]] ^ 1])
            if winding_turns(t, m, frm, to, cont) != winding_heights(t, m, frm, to, cont, field):
                return False, f"tree {t.to_text()!r} path {frm}->{to}"
            pairs += 1
    return True, f"{trees} trees, {pairs} paths"


def twelve_six_four() -> Check:
    # coefficients of R cancel: 19/78 + 1/39 - 7/26 = 0, constants 1/6 + 1/3 + 1/2 = 1
    exact = Fraction(19, 78) + Fraction(1, 39) - Fraction(7, 26) == 0 \
        and Fraction(1, 6) + Fraction(1, 3) + Fraction(1, 2) == 1
    _, n, bound = closed_form.twelve_six_four_series()
    probs = closed_form.twelve_six_four_probs()
    ok = exact and bound < 1e-12 and all(0 < p < 1 for p in probs) and abs(sum(probs) - 1) < 1e-40
    return ok, f"{n} terms, tail < {float(bound):.1e}, probs " + ", ".join(f"{float(p):.6f}" for p in probs)


def eigenvectors(families=("rect_tree", "even_odd", "even_even"), size: int = 3,
                 tol: float = 1e-12) -> Check:
    n = 0
    for fam in families:
        for l in range(1, size + 1):
            for m in range(1, size + 1):
                r = regions.generate(fam, l, m)
                lap = exact_count.laplacian(r.map)
                if r.root is not None:
                    lap = lap.minor(r.root)
                for j, k in closed_form.eigen_indices(r):
                    vec, lam = closed_form.eigenpair(r, j, k)
                    if not exact_count.check_eigenvector(lap, vec, lam, tol):
                        return False, f"{fam}({l},{m}) index ({j},{k})"
                    n += 1
    return True, f"{n} eigenpairs"


CHECKS: Dict[str, Callable[[], Check]] = {
    "theorem1": theorem_one,
    "round_trip": round_trip,
    "rectangles": rectangles,
    "even_even": even_even_base,
    "urban_renewal": urban_renewal,
    "return_constant": return_const,
    "diamond_ratio": diamond_ratio,
    "hex": hex_region,
    "winding": winding,
    "twelve_six_four": twelve_six_four,
    "eigenvectors": eigenvectors,
}

SLOW = {"winding"}


def run_checks(quick: bool = False) -> List[Tuple[str, bool, str]]:
    out = []
    for name, fn in CHECKS.items():
        if quick and name in SLOW:
            continue
        try:
            ok, detail = fn()
        except Exception as exc:       # a crash is a failed check, not a traceback
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, ok, detail))
    return out
