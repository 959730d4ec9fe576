"""Eigenvalue-product formulas for spanning-tree counts, plus two series constants.

Products are evaluated with mpmath at ``DPS`` significant digits and
rounded to the nearest integer; ``margin`` is the relative rounding gap.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, List, Tuple

import mpmath
from mpmath import mp, mpf

DPS = 60

RECT_KINDS = ("odd_odd_corner", "odd_odd_dual", "even_odd", "even_even", "odd_odd_extra")
DIAMOND_KINDS = ("diamond", "diamond2")
TRIANGLE_KINDS = ("staircase", "aztec_quarter")


class BadParameters(ValueError):
    pass


@dataclass(frozen=True)
class FormulaResult:
    raw: mpf
    rounded: int
    margin: float

    @classmethod
    def of(cls, raw) -> "FormulaResult":
        r = int(mpmath.nint(raw))
        margin = float(abs(raw - r) / max(1, abs(r)))
        return cls(raw, r, margin)


def _product(factors: Iterable) -> mpf:
    p = mpf(1)
    for f in factors:
        p *= f
    return p


def _c(num, den):
    return mpmath.cos(mpmath.pi * num / den)


def rect_product(kind: str, l: int, m: int) -> FormulaResult:
    if l < 1 or m < 1:
        raise BadParameters("l and m must be positive")
    with mp.workdps(DPS):
        if kind == "odd_odd_corner":
            raw = _product(4 - 2 * _c(j, l) - 2 * _c(k, m)
                           for j in range(l) for k in range(m) if (j, k) != (0, 0)) / (l * m)
        elif kind == "odd_odd_dual":
            raw = _product(4 - 2 * _c(j, l) - 2 * _c(k, m)
                           for j in range(1, l) for k in range(1, m))
        elif kind == "even_odd":
            raw = _product(4 - 2 * _c(2 * j + 1, 2 * l + 1) - 2 * _c(k, m)
                           for j in range(l) for k in range(m))
        elif kind == "even_even":
            raw = _product(4 - 2 * _c(2 * j + 1, 2 * l + 1) - 2 * _c(2 * k + 1, 2 * m + 1)
                           for j in range(l) for k in range(m))
        elif kind == "odd_odd_extra":
            raw = _product(4 - 2 * _c(j, l) - 2 * _c(k, m)
                           for j in range(l) for k in range(1, m))
        else:
            raise BadParameters(f"unknown rectangle kind {kind!r}")
        return FormulaResult.of(raw)


def diamond_indices(kind: str, l: int, m: int) -> List[Tuple[int, int]]:
    idx = [(j, k) for j in range(1, 2 * l) for k in range(1, m)]
    top = l if kind == "diamond" else l - 1
    return idx + [(j, m) for j in range(1, top + 1)]


def diamond_product(kind: str, l: int, m: int) -> FormulaResult:
    if kind not in DIAMOND_KINDS:
        raise BadParameters(f"unknown diamond kind {kind!r}")
    if l < 1 or m < 1:
        raise BadParameters("l and m must be positive")
    with mp.workdps(DPS):
        raw = _product(4 - 4 * _c(j, 2 * l) * _c(k, 2 * m) for j, k in diamond_indices(kind, l, m))
        return FormulaResult.of(raw)


def triangle_product(kind: str, m: int) -> FormulaResult:
    with mp.workdps(DPS):
        if kind == "staircase":
            if m < 1:
                raise BadParameters("m must be positive")
            raw = _product(4 - 2 * _c(2 * j + 1, 2 * m + 1) - 2 * _c(2 * k + 1, 2 * m + 1)
                           for k in range(m) for j in range(k))
        elif kind == "aztec_quarter":
            if m < 2:
                raise BadParameters("m must be at least 2")
            raw = _product(4 - 2 * _c(j, m) - 2 * _c(k, m)
                           for k in range(1, m) for j in range(1, k))
        else:
            raise BadParameters(f"unknown triangle kind {kind!r}")
        return FormulaResult.of(raw)


def hex_triples(n: int) -> List[Tuple[int, int]]:
    """Admissible (alpha, beta) as exponents of e^(2 pi i / 3n).

    alpha^(3n) = 1, (alpha/beta)^n = 1, gamma = 1/(alpha beta), all three
    distinct.  Exponents are taken mod 3n.
    """
    N = 3 * n
    out = []
    for a in range(N):
        for t in range(n):
            b = (a + 3 * t) % N          # beta = alpha times an n-th root of unity
            c = (-a - b) % N
            if len({a, b, c}) == 3:
                out.append((a, b))
    return out


def hex_product(m: int) -> FormulaResult:
    """Directed tree count of the side-m Eisenstein triangle with wired boundary.

    The triangle sits inside the side-n triangle of the torus construction
    as its interior points, which forces n = m + 3.
    """
    if m < 1:
        raise BadParameters("m must be positive")
    n = m + 3
    N = 3 * n
    with mp.workdps(DPS):
        root = lambda e: mpmath.expjpi(mpf(2 * e) / N)
        p = mpmath.mpc(1)
        for a, b in hex_triples(n):
            p *= 3 - root(a) - root(b) - root((-a - b) % N)
        raw = mpmath.re(p) ** (mpf(1) / 6)
        return FormulaResult.of(raw)


def twelve_six_four_series(tol: float = 1e-13) -> Tuple[mpf, int, mpf]:
    """R = sum_n sum_k C(2n,n) C(n,k)^2 14^k / 13^(2n).

    The n-th outer term is at most (4 (1 + sqrt 14)^2 / 169)^n = q^n, so the
    tail from N on is at most q^N / (1 - q).  Returns (R, N, tail bound).
    """
    with mp.workdps(DPS):
        q = 4 * (1 + mpmath.sqrt(14)) ** 2 / 169
        total = mpf(0)
        n = 0
        while True:
            inner = sum(comb(n, k) ** 2 * 14 ** k for k in range(n + 1))
            total += mpf(comb(2 * n, n) * inner) / mpf(169) ** n
            n += 1
            bound = q ** n / (1 - q)
            if bound < tol:
                return total, n, bound


def twelve_six_four_probs() -> Tuple[mpf, mpf, mpf]:
    R, _, _ = twelve_six_four_series()
    with mp.workdps(DPS):
        return (mpf(1) / 6 + mpf(19) / 78 * R,
                mpf(1) / 3 + R / 39,
                mpf(1) / 2 - mpf(7) / 26 * R)


FORMULAS = {
    **{k: (lambda k: lambda l, m: rect_product(k, l, m))(k) for k in RECT_KINDS},
    **{k: (lambda k: lambda l, m: diamond_product(k, l, m))(k) for k in DIAMOND_KINDS},
    **{k: (lambda k: lambda l, m: triangle_product(k, m))(k) for k in TRIANGLE_KINDS},
    "hex": lambda l, m: hex_product(m),
}


# -- explicit eigenvectors on generated regions ------------------------------

def _eigen_formula(family: str, l: int, m: int, j: int, k: int):
    import math

    c, s, pi = math.cos, math.sin, math.pi
    if family == "rect_tree":
        return (lambda x, y: c(pi * j * x / l) * c(pi * k * y / m),
                4 - 2 * c(pi * j / l) - 2 * c(pi * k / m))
    if family == "even_odd":
        a = pi * (2 * j + 1) / (2 * l + 1)
        return (lambda x, y: c(a * x) * c(pi * k * y / m), 4 - 2 * c(a) - 2 * c(pi * k / m))
    if family == "even_even":
        a, b = pi * (2 * j + 1) / (2 * l + 1), pi * (2 * k + 1) / (2 * m + 1)
        return (lambda x, y: c(a * x) * c(b * y), 4 - 2 * c(a) - 2 * c(b))
    if family == "odd_odd_extra":
        return (lambda x, y: c(pi * j * x / l) * s(pi * k * y / m),
                4 - 2 * c(pi * j / l) - 2 * c(pi * k / m))
    if family in ("diamond", "diamond2"):
        return (lambda x, y: s(pi * j * (x + y) / (2 * l)) * s(pi * k * (y - x) / (2 * m)),
                4 - 4 * c(pi * j / (2 * l)) * c(pi * k / (2 * m)))
    if family == "triangle":
        a, b = pi * (2 * j + 1) / (2 * m + 1), pi * (2 * k + 1) / (2 * m + 1)
        return (lambda x, y: s(a * x) * s(b * y) - s(b * x) * s(a * y), 4 - 2 * c(a) - 2 * c(b))
    if family == "aztec_quarter":
        a, b = pi * j / m, pi * k / m
        return (lambda x, y: s(a * x) * s(b * y) - s(b * x) * s(a * y), 4 - 2 * c(a) - 2 * c(b))
    raise BadParameters(f"no eigenvector formula for {family!r}")


def eigenpair(region, j: int, k: int):
    """Candidate eigenvector (vertex -> value) and eigenvalue on ``region``.

    For regions with a wired root the vector lives on the non-root
    vertices (root row and column deleted); otherwise on all vertices.
    """
    l, m = (region.params + (None,))[:2] if len(region.params) == 2 else (None, region.params[0])
    f, lam = _eigen_formula(region.family, l, m, j, k)
    vec = {v: f(float(p[0]), float(p[1])) for v, p in region.points.items()}
    return vec, lam


def eigen_indices(region) -> List[Tuple[int, int]]:
    fam, p = region.family, region.params
    if fam == "rect_tree":
        return [(j, k) for j in range(p[0]) for k in range(p[1])]
    if fam in ("even_odd", "even_even"):
        return [(j, k) for j in range(p[0]) for k in range(p[1])]
    if fam == "odd_odd_extra":
        return [(j, k) for j in range(p[0]) for k in range(1, p[1])]
    if fam in DIAMOND_KINDS:
        return diamond_indices(fam, *p)
    if fam == "triangle":
        return [(j, k) for k in range(p[0]) for j in range(k)]
    if fam == "aztec_quarter":
        return [(j, k) for k in range(1, p[0]) for j in range(1, k)]
    raise BadParameters(f"no eigenvector formula for {fam!r}")
