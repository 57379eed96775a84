"""Weighted Lp spaces on a sector and the translation operator.

The space is ``L^p_v`` over a sector: measurable f with
``integral |f(t)|^p v(t) dt`` finite.  Translation acts by
``(T_t f)(s) = f(s + t)``.  Functions carry their translation offset
lazily — translating only adds offsets, so the semigroup law
``T_s T_t = T_{s+t}`` is exact float arithmetic, and all numerical error
is confined to norm quadrature.

Norms of rectangle indicators are computed by intersecting the
integration domain with the rectangle union first (after the change of
variables u = s + offset), so the integrand handed to Gauss-Legendre
panels is the smooth weight alone and never crosses an indicator
discontinuity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from . import quadrature as quad
from .errors import DomainError, EvaluationError
from .geometry import Sector, as_complex, contains
from .sets import PolarRect, RectUnionSet
from .weights import Weight, weight_rect_integral, _angular_edges

__all__ = [
    "LpSpace", "SectorFunction", "NormResult",
    "indicator", "bump", "linear_combination", "custom_function",
    "lp_norm", "translate_function", "orbit_norm", "indicator_orbit_norms",
    "function_from_spec",
]


@dataclass(frozen=True)
class LpSpace:
    """The space L^p_v over a sector; p in [1, inf)."""

    weight: Weight
    p: float
    sector: Sector

    def __post_init__(self):
        if self.p < 1:
            raise DomainError(f"exponent p must be >= 1, got {self.p}")


# ---------------------------------------------------------------------------
# function representations


class _IndicatorBase:
    __slots__ = ("rects", "amplitude")

    def __init__(self, rects: RectUnionSet, amplitude: float = 1.0):
        self.rects = rects
        self.amplitude = float(amplitude)

    def evaluate(self, z):
        return self.amplitude * self.rects.member(z).astype(float)

    def support_radius(self, alpha: float):
        return self.rects.support_radius()

    def __eq__(self, other):
        return (isinstance(other, _IndicatorBase)
                and self.rects == other.rects and self.amplitude == other.amplitude)

    def __hash__(self):
        return hash((self.rects, self.amplitude))


class _BumpBase:
    """Smooth compactly supported cap: a * cos^2(pi d / (2 r)) for d < r."""

    __slots__ = ("center", "radius", "amplitude")

    def __init__(self, center: complex, radius: float, amplitude: float = 1.0):
        if radius <= 0:
            raise DomainError(f"bump radius must be > 0, got {radius}")
        self.center = complex(center)
        self.radius = float(radius)
        self.amplitude = float(amplitude)

    def evaluate(self, z):
        d = np.abs(np.asarray(z, dtype=complex) - self.center)
        inside = d < self.radius
        out = np.zeros(d.shape)
        out[inside] = self.amplitude * np.cos(np.pi * d[inside] / (2 * self.radius)) ** 2
        return out

    def support_radius(self, alpha: float):
        return abs(self.center) + self.radius

    def __eq__(self, other):
        return (isinstance(other, _BumpBase) and self.center == other.center
                and self.radius == other.radius and self.amplitude == other.amplitude)

    def __hash__(self):
        return hash((self.center, self.radius, self.amplitude))


class _CombBase:
    __slots__ = ("terms",)

    def __init__(self, terms: Sequence[tuple[float, "SectorFunction"]]):
        self.terms = tuple((float(c), f) for c, f in terms)

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape)
        for c, f in self.terms:
            out = out + c * f.evaluate(z)
        return out

    def support_radius(self, alpha: float):
        # each term carries its own offset, so recurse through the wrapper
        radii = [f.support_radius(alpha) for _, f in self.terms]
        if any(r is None for r in radii):
            return None
        return max(radii, default=0.0)


class _CustomBase:
    __slots__ = ("fn", "radius_hint")

    def __init__(self, fn: Callable, radius_hint: float | None = None):
        self.fn = fn
        self.radius_hint = radius_hint

    def evaluate(self, z):
        return np.asarray(self.fn(np.asarray(z, dtype=complex)), dtype=float)

    def support_radius(self, alpha: float):
        return self.radius_hint


# For any points s, t of a sector with half-angle alpha the angle between
# them is at most 2*alpha, hence |s + t| >= sqrt(2) * cos(alpha) * max(|s|, |t|).
# This converts a support bound on the base into one on the translate.
def _cone_factor(alpha: float) -> float:
    return math.sqrt(2.0) * math.cos(alpha)


@dataclass(frozen=True)
class SectorFunction:
    """A member of the weighted space: a base shape plus a lazy offset.

    Evaluation at s reads ``base(s + offset)``; translating by t just
    adds t to the offset.  `kind` is one of indicator, bump,
    linear-combination, custom.
    """

    base: object = field(repr=False)
    offset: complex = 0j
    kind: str = "custom"

    def evaluate(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        vals = self.base.evaluate(z + self.offset)
        if self.kind == "custom" and not np.all(np.isfinite(vals)):
            raise EvaluationError("custom evaluator returned non-finite values")
        return vals

    def support_radius(self, alpha: float) -> float | None:
        """Bound R such that this function vanishes on |s| > R in the sector.

        Valid for any in-sector offset (including later translations):
        |s + offset| >= sqrt(2) cos(alpha) |s|.
        """
        base_r = self.base.support_radius(alpha)
        if base_r is None:
            return None
        return base_r / _cone_factor(alpha)

    def simplified(self) -> "SectorFunction":
        """Flatten linear combinations and merge identical (base, offset) terms.

        Coefficients canceling to exactly 0.0 drop out, so a symbolic
        difference (g + f) - g collapses to f with no quadrature noise.
        """
        if self.kind != "linear-combination":
            return self
        flat: list[tuple[float, SectorFunction]] = []

        def _collect(scale: float, shift: complex, fn: SectorFunction):
            if fn.kind == "linear-combination":
                for c, sub in fn.base.terms:
                    _collect(scale * c, shift + fn.offset, sub)
            else:
                flat.append((scale, replace(fn, offset=fn.offset + shift)))

        _collect(1.0, 0j, self)
        merged: list[list] = []
        for c, fn in flat:
            for slot in merged:
                if slot[1].base == fn.base and slot[1].offset == fn.offset:
                    slot[0] += c
                    break
            else:
                merged.append([c, fn])
        merged = [(c, fn) for c, fn in merged if c != 0.0]
        if not merged:
            return indicator(RectUnionSet())
        if len(merged) == 1:
            c, fn = merged[0]
            if c == 1.0:
                return fn
            if fn.kind == "indicator":
                scaled = _IndicatorBase(fn.base.rects, c * fn.base.amplitude)
                return SectorFunction(scaled, fn.offset, "indicator")
            if fn.kind == "bump":
                scaled = _BumpBase(fn.base.center, fn.base.radius, c * fn.base.amplitude)
                return SectorFunction(scaled, fn.offset, "bump")
        return SectorFunction(_CombBase(merged), 0j, "linear-combination")

    @property
    def is_zero(self) -> bool:
        if self.kind == "indicator":
            return self.base.rects.is_empty or self.base.amplitude == 0.0
        if self.kind == "linear-combination":
            return not self.base.terms
        return False

    def scaled(self, c: float) -> "SectorFunction":
        return linear_combination([(c, self)]).simplified()


def indicator(rects: RectUnionSet, amplitude: float = 1.0) -> SectorFunction:
    return SectorFunction(_IndicatorBase(rects, amplitude), 0j, "indicator")


def bump(center, radius: float, amplitude: float = 1.0) -> SectorFunction:
    return SectorFunction(_BumpBase(as_complex(center), radius, amplitude), 0j, "bump")


def linear_combination(terms: Sequence[tuple[float, SectorFunction]]) -> SectorFunction:
    return SectorFunction(_CombBase(terms), 0j, "linear-combination")


def custom_function(fn: Callable, support_radius: float | None = None) -> SectorFunction:
    return SectorFunction(_CustomBase(fn, support_radius), 0j, "custom")


def translate_function(f: SectorFunction, t, sector: Sector) -> SectorFunction:
    """Apply the translation operator: offsets add, evaluation is exact."""
    z = as_complex(t)
    if not contains(sector, z):
        raise DomainError(f"translation step {z} lies outside the sector")
    return replace(f, offset=f.offset + z)


# ---------------------------------------------------------------------------
# norms


@dataclass(frozen=True)
class NormResult:
    """Truncated norm with its truncation radius and tail status.

    tail == 0.0 means the truncation covers the support (the value is the
    full norm up to quadrature); tail is None when nothing is known about
    the remainder.
    """

    value: float
    tail: float | None
    R: float

    def __float__(self):
        return self.value


def _clip_bounds(rect: PolarRect, taus: np.ndarray, th: np.ndarray,
                 R: float | None, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Per-(offset, ray) radial interval of rect ∩ (tau + sector) ∩ {|u-tau| < R}.

    Each clipping set is convex, so along the ray u = rho*e^{i th} the
    region is a single interval.  The shifted sector contributes only
    lower bounds: for th strictly inside (-alpha, alpha) both half-plane
    normals have a fixed sign, giving rho >= Im(tau e^{±i alpha}) /
    sin(th ± alpha) with matching signs.  Returns lo, hi of shape
    (len(taus), len(th)).
    """
    taus = np.asarray(taus, dtype=complex).reshape(-1, 1)
    lo = np.full((taus.shape[0], len(th)), rect.r_lo)
    hi = np.full_like(lo, rect.r_hi)
    for sgn in (1.0, -1.0):
        rot = complex(math.cos(sgn * alpha), math.sin(sgn * alpha))
        c = (taus * rot).imag
        s = np.sin(th + sgn * alpha)[None, :]
        np.maximum(lo, c / s, out=lo)
    if R is not None:
        d = taus.real * np.cos(th)[None, :] + taus.imag * np.sin(th)[None, :]
        disc = d * d - (np.abs(taus) ** 2 - R * R)
        ok = disc > 0
        root = np.sqrt(np.where(ok, disc, 0.0))
        lo = np.where(ok, np.maximum(lo, d - root), hi)
        hi = np.where(ok, np.minimum(hi, d + root), hi)
    # collapse empty rays to zero-length intervals inside the rect so the
    # (zero-weight) quadrature nodes stay in range for any evaluator
    lo = np.minimum(lo, rect.r_hi)
    hi = np.minimum(np.maximum(hi, lo), rect.r_hi)
    return lo, hi


def _kink_angles(rect: PolarRect, tau: complex, R: float | None,
                 alpha: float) -> list[float]:
    """Angles where the active radial clip switches, inside the rect span.

    The per-ray interval endpoints are maxima/minima of analytic pieces
    (rect radii, two shifted half-plane cuts, optionally a disk), so the
    angular integrand is analytic between these angles; splitting panels
    here restores full Gauss-Legendre accuracy.
    """
    cands: list[float] = []
    c_p = (tau * complex(math.cos(alpha), math.sin(alpha))).imag
    c_m = (tau * complex(math.cos(alpha), -math.sin(alpha))).imag
    for c, sgn in ((c_p, 1.0), (c_m, -1.0)):
        for r in (rect.r_lo, rect.r_hi):
            if r <= 0 or abs(c) > r:
                continue
            a0 = math.asin(c / r)
            cands += [a0 - sgn * alpha, math.pi - a0 - sgn * alpha,
                      -math.pi - a0 - sgn * alpha]
    den = c_p - c_m
    if den > 0:
        cands.append(math.atan(math.tan(alpha) * (c_p + c_m) / den))
    if R is not None and tau != 0:
        at = math.atan2(tau.imag, tau.real)
        mt = abs(tau)
        for r in (rect.r_lo, rect.r_hi):
            if r <= 0:
                continue
            cosv = (mt * mt + r * r - R * R) / (2 * mt * r)
            if abs(cosv) <= 1:
                d = math.acos(cosv)
                cands += [at - d, at + d]
        for sa in (alpha, -alpha):
            for pm in (1.0, -1.0):
                u = tau + pm * R * complex(math.cos(sa), math.sin(sa))
                if u != 0:
                    cands.append(math.atan2(u.imag, u.real))
        if mt > R:
            d = math.acos(math.sqrt(mt * mt - R * R) / mt)
            cands += [at - d, at + d]
    eps = 1e-12
    return sorted({th for th in cands if rect.th_lo + eps < th < rect.th_hi - eps})


def _rect_clip_integrals(v: Weight, rect: PolarRect, taus: np.ndarray,
                         R: float | None, sector: Sector, npts: int = 12,
                         split_kinks: bool = False,
                         max_block: int = 4_000_000) -> np.ndarray:
    """Batch of integrals of v(u - tau) over the clipped rectangle, per tau.

    The angular integrand is continuous (piecewise smooth with kinks
    where the active clip changes), so Gauss-Legendre panels in the
    angle converge fast; the inner radial rule runs on the exact per-ray
    interval, so the indicator discontinuity is never sampled.  With
    `split_kinks` (single-offset calls) panels are split at the exact
    switch angles, restoring spectral accuracy.
    """
    alpha = sector.alpha
    taus = np.asarray(taus, dtype=complex)
    span = rect.th_hi - rect.th_lo
    n_th = max(12, int(math.ceil(span * 24)))
    if split_kinks and len(taus) == 1:
        n_th = max(8, int(math.ceil(span * 4)))
    if not v.radial:
        n_th = max(n_th, len(_angular_edges(v, sector, rect.r_hi,
                                            rect.th_lo, rect.th_hi)) - 1)
    edges = np.linspace(rect.th_lo, rect.th_hi, n_th + 1)
    if split_kinks and len(taus) == 1:
        kinks = _kink_angles(rect, complex(taus[0]), R, alpha)
        if kinks:
            edges = np.unique(np.concatenate([edges, kinks]))
    th, wt = quad.panel_nodes(edges, npts)
    lo, hi = _clip_bounds(rect, taus, th, R, alpha)
    out = np.zeros(len(taus))
    n_r = max(2, min(32, int(math.ceil((rect.r_hi - rect.r_lo) / 2.0))))
    rows_per_chunk = max(1, max_block // (len(th) * n_r * npts))
    phase = np.exp(1j * th)
    for start in range(0, len(taus), rows_per_chunk):
        rows = slice(start, min(start + rows_per_chunk, len(taus)))
        l, h = lo[rows], hi[rows]
        if not np.any(h > l):
            continue
        rho, wr = quad.interval_gl(l.ravel(), h.ravel(), n_r, npts)
        z = rho * np.tile(phase, l.shape[0])[:, None] \
            - np.repeat(taus[rows], len(th))[:, None]
        vals = v.eval(z) * rho
        inner = np.sum(wr * vals, axis=1).reshape(l.shape)
        out[rows] = inner @ wt
    return out


def _indicator_norm(space: LpSpace, f: SectorFunction, R: float | None) -> NormResult:
    base: _IndicatorBase = f.base
    total = 0.0
    for rect in base.rects.rects:
        if f.offset == 0:
            # untranslated: plain radial clip, panel-aligned with the
            # annulus terms used everywhere else
            hi = rect.r_hi if R is None else min(R, rect.r_hi)
            if hi > rect.r_lo:
                clipped = PolarRect(rect.r_lo, hi, rect.th_lo, rect.th_hi)
                total += weight_rect_integral(space.weight, clipped, space.sector)
        else:
            total += float(_rect_clip_integrals(
                space.weight, rect, np.array([f.offset]), R, space.sector,
                split_kinks=True)[0])
    total = max(total, 0.0)
    value = abs(base.amplitude) * total ** (1.0 / space.p)
    sup = f.support_radius(space.sector.alpha)
    r_eff = sup if R is None else R
    tail = 0.0 if (R is None or (sup is not None and sup <= R)) else None
    return NormResult(value=value, tail=tail, R=float(r_eff if r_eff is not None else np.inf))


def indicator_orbit_norms(space: LpSpace, f: SectorFunction, ts,
                          R: float | None = None) -> np.ndarray:
    """``||T_t f||`` for a batch of steps t, f an indicator function.

    Same quadrature as the single-call path, vectorised over offsets;
    used where many separation norms of one witness are needed.
    """
    g = f.simplified()
    if g.is_zero:
        return np.zeros(len(np.atleast_1d(ts)))
    if g.kind != "indicator":
        raise DomainError("batch orbit norms require an indicator function")
    taus = g.offset + np.asarray([as_complex(t) for t in np.atleast_1d(ts)])
    total = np.zeros(len(taus))
    for rect in g.base.rects.rects:
        total += _rect_clip_integrals(space.weight, rect, taus, R, space.sector)
    total = np.maximum(total, 0.0)
    return abs(g.base.amplitude) * total ** (1.0 / space.p)


def _bump_norm(space: LpSpace, f: SectorFunction, R: float | None) -> NormResult:
    """Norm of a (translated) bump in local polar coordinates.

    Around the bump's own center the integrand is smooth (the cap
    vanishes C1 at its support edge), and the sector's half-planes cut
    each local ray in a single interval, so Gauss-Legendre panels
    converge fast without ever crossing a support boundary.
    """
    b: _BumpBase = f.base
    center = b.center - f.offset  # bump center seen from s-coordinates
    rad = b.radius
    alpha = space.sector.alpha
    p = space.p
    npts = 12
    phi, wphi = quad.panel_nodes(np.linspace(-math.pi, math.pi, 49), npts)
    lo = np.zeros(phi.shape)
    hi = np.full(phi.shape, rad)
    for sgn in (1.0, -1.0):
        rot = complex(math.cos(sgn * alpha), math.sin(sgn * alpha))
        c0 = (center * rot).imag
        coef = np.sin(phi + sgn * alpha)
        # sector constraint: sgn * (c0 + rho*coef) >= 0 along the local ray
        pos = sgn * coef > 1e-15
        neg = sgn * coef < -1e-15
        bound = np.where(coef != 0, -c0 / np.where(coef != 0, coef, 1.0), 0.0)
        lo[pos] = np.maximum(lo[pos], bound[pos])
        hi[neg] = np.minimum(hi[neg], bound[neg])
        flat = ~(pos | neg)
        if np.any(flat) and sgn * c0 < 0:
            hi[flat] = 0.0
    if R is not None:
        d = center.real * np.cos(phi) + center.imag * np.sin(phi)
        disc = d * d - (abs(center) ** 2 - R * R)
        ok = disc > 0
        root = np.sqrt(np.where(ok, disc, 0.0))
        lo = np.where(ok, np.maximum(lo, -d - root), hi)
        hi = np.where(ok, np.minimum(hi, -d + root), hi)
    lo = np.clip(lo, 0.0, rad)
    hi = np.clip(hi, lo, rad)
    if not np.any(hi > lo):
        return NormResult(0.0, 0.0, float(R if R is not None else 0.0))
    rho, wr = quad.interval_gl(lo, hi, 8, npts)
    z = center + rho * np.exp(1j * phi)[:, None]
    vals = (np.abs(b.amplitude * np.cos(np.pi * np.minimum(rho, rad) / (2 * rad)) ** 2)
            ** p * space.weight.eval(z) * rho)
    total = max(float(np.sum(wphi * np.sum(wr * vals, axis=1))), 0.0)
    sup = f.support_radius(alpha)
    tail = 0.0 if (R is None or (sup is not None and sup <= R)) else None
    r_eff = R if R is not None else sup
    return NormResult(value=total ** (1.0 / p), tail=tail, R=float(r_eff))


def _generic_norm(space: LpSpace, f: SectorFunction, R: float | None) -> NormResult:
    sup = f.support_radius(space.sector.alpha)
    if R is None and sup is None:
        raise DomainError("function has unbounded support; a truncation radius is required")
    r_eff = min(x for x in (R, sup) if x is not None)
    if r_eff <= 0:
        return NormResult(0.0, 0.0, 0.0)
    r_edges = quad.radial_edges(0.0, r_eff, 1.0)
    n_th = max(8, len(_angular_edges(space.weight, space.sector, r_eff)) - 1)
    th_edges = np.linspace(-space.sector.alpha, space.sector.alpha, n_th + 1)

    def integrand(rho, th):
        z = rho * np.exp(1j * th)
        return np.abs(f.evaluate(z)) ** space.p * space.weight.eval(z)

    total = max(quad.integrate_polar(integrand, r_edges, th_edges, npts=12), 0.0)
    tail = 0.0 if (sup is not None and (R is None or sup <= R)) else None
    return NormResult(value=total ** (1.0 / space.p), tail=tail, R=float(r_eff))


def lp_norm(space: LpSpace, f: SectorFunction, R: float | None = None) -> NormResult:
    """Weighted p-norm of f, truncated at radius R (None = full support).

    Indicator functions (and combinations that collapse to one) follow
    the exact domain-intersection path; smooth kinds use Gauss-Legendre
    panels on the truncated sector.
    """
    if R is not None and R <= 0:
        raise DomainError(f"truncation radius must be > 0, got {R}")
    g = f.simplified()
    if g.is_zero:
        return NormResult(0.0, 0.0, float(R if R is not None else 0.0))
    if g.kind == "indicator":
        return _indicator_norm(space, g, R)
    if g.kind == "bump":
        return _bump_norm(space, g, R)
    return _generic_norm(space, g, R)


def orbit_norm(space: LpSpace, f: SectorFunction, t, R: float | None = None) -> float:
    """``|| T_t f ||`` — norm of the translate, truncated at R."""
    return lp_norm(space, translate_function(f, t, space.sector), R).value


# ---------------------------------------------------------------------------
# JSON specs


def function_from_spec(spec: dict) -> SectorFunction:
    """Build a function from a scenario JSON spec {kind, params, offset}."""
    from .errors import ConfigError
    kind = spec.get("kind")
    params = spec.get("params", {})
    off = spec.get("offset", [0.0, 0.0])
    offset = complex(float(off[0]), float(off[1]))
    if kind in ("indicator", "scaled-indicator"):
        rects = RectUnionSet.from_json(params["rects"])
        f = indicator(rects, amplitude=params.get("amplitude", 1.0))
    elif kind == "bump":
        c = params["center"]
        f = bump(complex(float(c[0]), float(c[1])), params["radius"],
                 params.get("amplitude", 1.0))
    elif kind == "linear-combination":
        f = linear_combination(
            [(term["coef"], function_from_spec(term["fn"])) for term in params["terms"]])
    else:
        raise ConfigError(f"unknown or non-serialisable function kind {kind!r}")
    return replace(f, offset=offset)
