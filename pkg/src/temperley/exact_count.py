"""Exact counting: negative Laplacian, Matrix Tree, and brute-force oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Hashable, List, Mapping, Sequence, Tuple

import numpy as np

from .bijection import Arborescence, PerfectMatching, _acyclic_toward
from .overlay import node_key
from .planar_map import PlanarMap


class TooLarge(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class NegativeLaplacian:
    vertices: Tuple[int, ...]
    rows: Tuple[Tuple[Fraction, ...], ...]

    def index(self, v: int) -> int:
        return self.vertices.index(v)

    def minor(self, root: int) -> "NegativeLaplacian":
        r = self.index(root)
        keep = [i for i in range(len(self.vertices)) if i != r]
        return NegativeLaplacian(
            tuple(self.vertices[i] for i in keep),
            tuple(tuple(self.rows[i][j] for j in keep) for i in keep),
        )

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.rows], dtype=float)


def laplacian(m: PlanarMap) -> NegativeLaplacian:
    idx = {v: i for i, v in enumerate(m.vertices)}
    n = len(idx)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for d in m.darts.values():
        if d.tail == d.head:
            continue
        i, j = idx[d.tail], idx[d.head]
        rows[i][j] -= d.weight
        rows[i][i] += d.weight
    return NegativeLaplacian(tuple(m.vertices), tuple(tuple(r) for r in rows))


def determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant: clear row denominators, then Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    a: List[List[int]] = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        scale /= den
        a.append([int(x * den) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale


def count_arborescences(m: PlanarMap, root: int) -> Fraction:
    return determinant(laplacian(m).minor(root).rows)


def enumerate_arborescences(m: PlanarMap, root: int, limit: int = 8,
                            include_zero: bool = True) -> Tuple[List[Arborescence], Fraction]:
    """All spanning trees oriented toward ``root`` with their weight sum.

    With ``include_zero`` the candidates at each vertex are all non-loop
    half-edges, so trees using a missing direction (weight 0) are listed
    too; this keeps the list in bijection with overlay matchings.
    """
    if len(m.vertices) > limit:
        raise TooLarge(f"{len(m.vertices)} vertices exceeds limit {limit}")
    others = [v for v in m.vertices if v != root]
    choices = []
    for v in others:
        hs = [h for h in m.rotation[v]
              if m.target(h) != v and (include_zero or m.halfedge_weight(h) > 0)]
        choices.append(sorted(hs))
    trees = []
    total = Fraction(0)
    for combo in product(*choices):
        out = dict(zip(others, combo))
        if _acyclic_toward(m, root, out):
            t = Arborescence.from_halfedges(root, out)
            trees.append(t)
            total += t.weight(m)
    return trees, total


def enumerate_matchings(graph, limit: int = 48) -> Tuple[List[PerfectMatching], Fraction]:
    """Backtracking over perfect matchings of any graph with an ``adj`` map.

    Links of weight 0 are kept, matching the tree enumerator's default.
    """
    nodes = sorted(graph.adj, key=node_key)
    if len(nodes) > limit:
        raise TooLarge(f"{len(nodes)} nodes exceeds limit {limit}")
    order = {n: i for i, n in enumerate(nodes)}
    nbrs = {n: sorted(graph.adj[n], key=order.__getitem__) for n in nodes}
    matched: Dict[Hashable, Hashable] = {}
    out: List[PerfectMatching] = []
    total = [Fraction(0)]

    def pick():
        best, best_deg = None, None
        for n in nodes:
            if n in matched:
                continue
            deg = sum(1 for x in nbrs[n] if x not in matched)
            if best is None or deg < best_deg:
                best, best_deg = n, deg
                if deg <= 1:
                    break
        return best

    def rec(w: Fraction):
        n = pick()
        if n is None:
            out.append(PerfectMatching.from_pairs(
                [(a, b) for a, b in matched.items() if order[a] < order[b]], w))
            total[0] += w
            return
        for x in nbrs[n]:
            if x in matched:
                continue
            matched[n], matched[x] = x, n
            rec(w * graph.adj[n][x])
            del matched[n], matched[x]

    rec(Fraction(1))
    return out, total[0]


def count_matchings_brute(graph, limit: int = 48) -> Fraction:
    return enumerate_matchings(graph, limit)[1]


def check_eigenvector(lap: NegativeLaplacian, candidate: Mapping[int, float],
                      lam: float, tol: float = 1e-12) -> bool:
    if set(candidate) != set(lap.vertices):
        raise DimensionMismatch("candidate must be defined on exactly the Laplacian's vertices")
    f = np.array([float(candidate[v]) for v in lap.vertices])
    resid = lap.as_array() @ f - lam * f
    scale = np.max(np.abs(f)) if f.size else 0.0
    return bool(np.max(np.abs(resid), initial=0.0) <= tol * scale)


def spectral_tree_count(m: PlanarMap, zero_tol: float = 1e-9) -> float:
    """Numeric cross-check: product of nonzero eigenvalues divided by n."""
    eig = np.linalg.eigvals(laplacian(m).as_array())
    zero = np.abs(eig) < zero_tol
    if zero.sum() > 1:
        return 0.0
    n = len(m.vertices)
    return float(np.real(np.prod(eig[~zero]))) / n


def matching_weight_sum(graph, limit: int = 400) -> Fraction:
    """Weighted perfect-matching sum by memoized elimination.

    Nodes are ordered breadth-first so the set of still-open nodes stays a
    thin frontier; the memo is keyed by the bitmask of unmatched nodes.
    """
    nodes = sorted(graph.adj, key=node_key)
    if len(nodes) > limit:
        raise TooLarge(f"{len(nodes)} nodes exceeds limit {limit}")
    order: List = []
    seen = set()
    for s in nodes:
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in sorted(graph.adj[x], key=node_key):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    pos = {n: i for i, n in enumerate(order)}
    nbrs = [[(pos[y], w) for y, w in graph.adj[x].items() if y != x] for x in order]
    full = (1 << len(order)) - 1
    memo: Dict[int, Fraction] = {0: Fraction(1)}

    def rec(mask: int) -> Fraction:
        if mask in memo:
            return memo[mask]
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        total = Fraction(0)
        for j, w in nbrs[i]:
            if rest >> j & 1:
                total += w * rec(rest & ~(1 << j))
        memo[mask] = total
        return total

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * len(order) + 100))
    try:
        return rec(full)
    finally:
        sys.setrecursionlimit(old)
