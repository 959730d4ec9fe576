"""Wilson's algorithm for weighted arborescences, and random matchings via the bijection.

Randomness comes from numpy's Philox counter-based generator, so a seed
gives the same tree on every platform.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import comb
from typing import Dict, Iterable, List, Optional, Set, Tuple

import numpy as np

from .bijection import Arborescence, NotIncident, PerfectMatching, tree_to_matching
from .overlay import build_overlay, restrict
from .planar_map import PlanarMap


class Unreachable(RuntimeError):
    pass


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


@dataclass
class SamplerStats:
    total_steps: int = 0
    trees_drawn: int = 0

    def line(self) -> str:
        return f"steps={self.total_steps} trees={self.trees_drawn}"


@dataclass(frozen=True)
class WalkPolicy:
    """Per-vertex successor darts with cumulative probabilities."""

    darts: Dict[int, Tuple[int, ...]]
    heads: Dict[int, Tuple[int, ...]]
    cumulative: Dict[int, np.ndarray]

    @classmethod
    def of(cls, m: PlanarMap) -> "WalkPolicy":
        darts, heads, cum = {}, {}, {}
        for v in m.vertices:
            ds = sorted((d for d in m.out_darts(v) if d.weight > 0 and d.head != v),
                        key=lambda d: d.id)
            darts[v] = tuple(d.id for d in ds)
            heads[v] = tuple(d.head for d in ds)
            w = np.array([float(d.weight) for d in ds])
            cum[v] = np.cumsum(w) / w.sum() if ds else w
        return cls(darts, heads, cum)

    def probabilities(self, v: int) -> Dict[int, float]:
        c = self.cumulative[v]
        p = np.diff(np.concatenate(([0.0], c)))
        return dict(zip(self.darts[v], p.tolist()))

    def step(self, v: int, rng: np.random.Generator) -> Tuple[int, int]:
        c = self.cumulative[v]
        if len(c) == 0:
            raise Unreachable(f"vertex {v} has no outgoing dart of positive weight")
        i = int(np.searchsorted(c, rng.random(), side="right"))
        i = min(i, len(c) - 1)
        return self.darts[v][i], self.heads[v][i]


def reaches(m: PlanarMap, targets: Iterable[int]) -> Set[int]:
    """Vertices with a positive-weight directed path into ``targets``."""
    back: Dict[int, List[int]] = {v: [] for v in m.vertices}
    for d in m.darts.values():
        if d.weight > 0 and d.tail != d.head:
            back[d.head].append(d.tail)
    seen = set(targets)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for u in back[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def _walk(policy: WalkPolicy, start: int, absorbed, rng, cap: int) -> Tuple[List[int], List[int], int]:
    path = [start]
    darts: List[int] = []
    pos = {start: 0}
    steps = 0
    v = start
    while v not in absorbed:
        if steps >= cap:
            raise Unreachable(f"walk from {start} exceeded {cap} steps")
        d, w = policy.step(v, rng)
        steps += 1
        if w in pos:
            # erase the loop just closed
            k = pos[w]
            for u in path[k + 1:]:
                del pos[u]
            del path[k + 1:]
            del darts[k:]
        else:
            pos[w] = len(path)
            path.append(w)
            darts.append(d)
        v = w
    return path, darts, steps


def loop_erased_walk(m: PlanarMap, start: int, absorbed: Iterable[int], rng_seed=0,
                     step_cap: int = 10 ** 7) -> List[int]:
    absorbed = set(absorbed)
    if start not in reaches(m, absorbed):
        raise Unreachable(f"{start} cannot reach the absorbing set")
    _, darts, _ = _walk(WalkPolicy.of(m), start, absorbed, make_rng(rng_seed), step_cap)
    return darts


class WilsonSampler:
    """Reusable sampler: one policy, one RNG stream."""

    def __init__(self, m: PlanarMap, root: int, rng_seed=0, step_cap: int = 10 ** 8):
        self.map = m
        self.root = root
        self.rng = make_rng(rng_seed)
        self.policy = WalkPolicy.of(m)
        self.step_cap = step_cap
        self.stats = SamplerStats()
        bad = set(m.vertices) - reaches(m, {root})
        if bad:
            raise Unreachable(f"vertices {sorted(bad)} cannot reach root {root}")

    def sample(self) -> Arborescence:
        m = self.map
        in_tree = {self.root}
        out: Dict[int, int] = {}
        for v in m.vertices:
            if v in in_tree:
                continue
            path, darts, steps = _walk(self.policy, v, in_tree, self.rng, self.step_cap)
            self.stats.total_steps += steps
            for u, d in zip(path, darts):
                out[u] = m.halfedge_of_dart(d)
                in_tree.add(u)
        self.stats.trees_drawn += 1
        return Arborescence.from_halfedges(self.root, out)


def wilson_sample(m: PlanarMap, root: int, rng_seed=0) -> Tuple[Arborescence, SamplerStats]:
    s = WilsonSampler(m, root, rng_seed)
    t = s.sample()
    return t, s.stats


def sample_matching(m: PlanarMap, v_star: int, f_star: int, rng_seed=0) -> PerfectMatching:
    if not m.is_incident(v_star, f_star):
        raise NotIncident(f"vertex {v_star} is not on face {f_star}")
    t, _ = wilson_sample(m, v_star, rng_seed)
    return tree_to_matching(t, restrict(build_overlay(m), v_star, f_star))


# -- expected walk length on the drifting lattice -------------------------

def return_terms(count: int) -> List[float]:
    return [comb(2 * k, k) ** 2 / 25 ** k for k in range(count)]


def return_constant(tol: float = 1e-10, max_terms: Optional[int] = None) -> float:
    """Expected number of visits to the origin of the 4/10, 1/10 biased walk.

    Sums C(2k,k)^2 / 25^k.  Consecutive terms have ratio below 16/25, so
    the tail after term t is at most t * 16/9.
    """
    total = 0.0
    k = 0
    term = 1.0
    while True:
        total += term
        if max_terms is not None and k + 1 >= max_terms:
            return total
        term = term * (2 * (2 * k + 1) / (k + 1)) ** 2 / 25
        k += 1
        if term * 16 / 9 < tol:
            return total + term


def return_constant_integral() -> float:
    from scipy.integrate import dblquad

    val, _ = dblquad(lambda y, x: 1.0 / (1 - 0.4 * np.cos(np.pi * x) - 0.4 * np.cos(np.pi * y)),
                     0, 1, 0, 1, epsabs=1e-11, epsrel=1e-11)
    return val


def return_constant_agm() -> float:
    import mpmath

    return float(1 / mpmath.agm(1, mpmath.mpf(3) / 5))
