"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the library's own integration
machinery: set measures are re-derived by midpoint Riemann sums and
inclusion-exclusion on raw rectangle parameters, norms by scipy
quadrature in coordinates the library never uses.
"""

import math

import numpy as np
import pytest

from sectorlab import PolarRect, RectUnionSet, Sector

ALPHA = math.pi / 4


@pytest.fixture
def sector() -> Sector:
    return Sector(ALPHA)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(42)


# ---------------------------------------------------------------------------
# oracles


def midpoint_measure_oracle(member, r_max: float, alpha: float = ALPHA,
                            n_r: int = 2000, n_th: int = 400) -> float:
    """Riemann-sum measure of {t in sector truncation : member(t)}."""
    r_edges = np.linspace(0.0, r_max, n_r + 1)
    th_edges = np.linspace(-alpha, alpha, n_th + 1)
    rho = 0.5 * (r_edges[:-1] + r_edges[1:])
    th = 0.5 * (th_edges[:-1] + th_edges[1:])
    z = rho[:, None] * np.exp(1j * th[None, :])
    cell = (th_edges[1] - th_edges[0]) * (r_edges[1:] ** 2 - r_edges[:-1] ** 2) / 2.0
    return float(np.sum(member(z) * cell[:, None]))


def _rect_intersection(a: PolarRect, b: PolarRect):
    r_lo, r_hi = max(a.r_lo, b.r_lo), min(a.r_hi, b.r_hi)
    t_lo, t_hi = max(a.th_lo, b.th_lo), min(a.th_hi, b.th_hi)
    if r_lo >= r_hi or t_lo >= t_hi:
        return None
    return PolarRect(r_lo, r_hi, t_lo, t_hi)


def inclusion_exclusion_measure(rects: list[PolarRect]) -> float:
    """Exact union measure by inclusion-exclusion on the raw rectangles.

    Exponential in the rectangle count; only for small oracle inputs.
    """
    from itertools import combinations
    total = 0.0
    for k in range(1, len(rects) + 1):
        sign = 1.0 if k % 2 == 1 else -1.0
        for combo in combinations(rects, k):
            inter = combo[0]
            for other in combo[1:]:
                inter = _rect_intersection(inter, other)
                if inter is None:
                    break
            if inter is not None:
                total += sign * inter.measure
    return total


def random_rect_union(rng: np.random.Generator, horizon: int = 200,
                      alpha: float = ALPHA) -> RectUnionSet:
    """Statistically homogeneous random set built from unit annuli.

    Each integer band is included with a set-level probability; included
    bands are full angular span or a random sub-span.  Homogeneity keeps
    the density profile translation-stable, which is what the
    translation-invariance checks exercise.
    """
    rects = []
    p_set = rng.uniform(0.25, 0.75)
    for k in range(horizon):
        if rng.uniform() > p_set:
            continue
        if rng.uniform() < 0.75:
            t_lo, t_hi = -alpha, alpha
        else:
            width = rng.uniform(0.4, 1.0) * 2 * alpha
            t_lo = rng.uniform(-alpha, alpha - width)
            t_hi = t_lo + width
        rects.append(PolarRect(float(k), float(k + 1), t_lo, t_hi))
    return RectUnionSet(rects)


def random_small_rects(rng: np.random.Generator, n_max: int = 4,
                       r_max: float = 4.0, alpha: float = ALPHA) -> list[PolarRect]:
    rects = []
    for _ in range(rng.integers(1, n_max + 1)):
        a = rng.uniform(0.0, r_max)
        b = a + rng.uniform(0.2, 2.0)
        t_lo = rng.uniform(-alpha, alpha - 0.2)
        t_hi = t_lo + rng.uniform(0.1, alpha - t_lo)
        rects.append(PolarRect(a, b, t_lo, t_hi))
    return rects
