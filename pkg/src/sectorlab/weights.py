"""Weight functions on a sector and their growth certificates.

A usable weight v is positive on the sector and satisfies the growth
inequality ``v(t) <= M * exp(w*|t'|) * v(t+t')`` for some constants
M >= 1 and real w; the pair (M, w) is the weight's *certificate*.  The
certificate is what makes the translation family strongly continuous on
the weighted space and what powers every guaranteed bound in this
library (operator growth, compact lower bounds).  Custom weights may be
used without a certificate, but certificate-dependent operations then
refuse to run rather than fabricate guarantees.

Evaluators must be vectorised and at least piecewise-continuous: the
panel quadrature assumes smoothness within each unit annulus, which all
built-in families satisfy (they are smooth in polar coordinates).

Built-in families::

    exp_decay      v(t) = exp(-|t|)          certificate (1, 1)
    poly_decay     v(t) = 1 / (|t|**4 + 1)   no certificate shipped
    vertical_exp   v(x+iy) = exp(2*y)        certificate (1, 2)
    constant       v(t) = c                  certificate (1, 0)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import quadrature as quad
from .errors import DomainError, InvalidWeightError, MissingCertificateError
from .geometry import Sector

__all__ = [
    "Certificate", "Weight", "PairSampling", "AdmissibilityReport",
    "IntegralEstimate", "CompactBound",
    "exp_decay", "poly_decay", "vertical_exp", "constant_weight", "custom_weight",
    "admissibility_check", "weight_integral", "compact_lower_bound", "grid_minimum",
    "weight_rect_integral", "weight_from_spec", "weight_to_spec",
]

_REL_SLACK = 1e-12  # relative slack for inequality checks at float precision


@dataclass(frozen=True)
class Certificate:
    """Growth constants (M, w) with M >= 1."""

    M: float
    w: float

    def __post_init__(self):
        if self.M < 1:
            raise DomainError(f"certificate needs M >= 1, got M={self.M}")


@dataclass(frozen=True)
class Weight:
    """Positive weight on the sector, with optional growth certificate.

    `evaluator` must accept complex ndarrays and return positive floats;
    `radial` marks evaluators that depend on |t| only, which lets the
    quadrature collapse its angular panels.
    """

    evaluator: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    family: str = "custom"
    certificate: Certificate | None = None
    radial: bool = False
    params: tuple = ()

    def __post_init__(self):
        # spot-check positivity on a small deterministic grid
        r = np.array([0.0, 0.25, 1.0, 3.0, 8.0])
        th = np.linspace(-1.0, 1.0, 5)
        z = r[:, None] * np.exp(1j * th[None, :])
        vals = np.asarray(self.evaluator(z), dtype=float)
        if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
            raise InvalidWeightError(
                f"weight '{self.family}' is non-positive or non-finite on the spot grid")

    def eval(self, z) -> np.ndarray:
        return np.asarray(self.evaluator(np.asarray(z, dtype=complex)), dtype=float)

    @property
    def certified(self) -> bool:
        return self.certificate is not None


def exp_decay() -> Weight:
    return Weight(lambda z: np.exp(-np.abs(z)), family="exp_decay",
                  certificate=Certificate(1.0, 1.0), radial=True)


def poly_decay() -> Weight:
    return Weight(lambda z: 1.0 / (np.abs(z) ** 4 + 1.0), family="poly_decay",
                  certificate=None, radial=True)


def vertical_exp() -> Weight:
    return Weight(lambda z: np.exp(2.0 * np.imag(z)), family="vertical_exp",
                  certificate=Certificate(1.0, 2.0), radial=False)


def constant_weight(value: float = 1.0) -> Weight:
    if value <= 0:
        raise InvalidWeightError(f"constant weight must be positive, got {value}")
    return Weight(lambda z: np.full(np.shape(z), float(value)), family="constant",
                  certificate=Certificate(1.0, 0.0), radial=True, params=(value,))


def custom_weight(fn: Callable[[np.ndarray], np.ndarray],
                  certificate: Certificate | None = None,
                  radial: bool = False) -> Weight:
    """Wrap a user evaluator.  Without a certificate the weight is
    'uncertified': operations that need guaranteed bounds will refuse it."""
    return Weight(fn, family="custom", certificate=certificate, radial=radial)


# ---------------------------------------------------------------------------
# admissibility


@dataclass(frozen=True)
class PairSampling:
    """Sampling plan for the growth inequality: a deterministic polar grid
    of base points and offsets, plus seeded random pairs."""

    grid_radii: tuple = (0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0)
    grid_angles: int = 7
    n_random: int = 2000
    r_max: float = 32.0
    seed: int = 42


@dataclass(frozen=True)
class AdmissibilityReport:
    ok: bool
    n_pairs: int
    worst_ratio: float
    violations: tuple  # worst few (t, t_prime, ratio), ratio = lhs/rhs

    def __bool__(self):
        return self.ok


def _grid_points(sector: Sector, sampling: PairSampling) -> np.ndarray:
    th = np.linspace(-sector.alpha, sector.alpha, sampling.grid_angles)
    r = np.asarray(sampling.grid_radii)
    return (r[:, None] * np.exp(1j * th[None, :])).ravel()


def _random_points(sector: Sector, n: int, rng: np.random.Generator,
                   r_max: float) -> np.ndarray:
    r = rng.uniform(0.0, r_max, n)
    th = rng.uniform(-sector.alpha, sector.alpha, n)
    return r * np.exp(1j * th)


def admissibility_check(v: Weight, M: float, w: float, sector: Sector,
                        sampling: PairSampling | None = None) -> AdmissibilityReport:
    """Test ``v(t) <= M exp(w|t'|) v(t+t')`` on sampled pairs (t, t').

    Violations beyond a 1e-12 relative slack are reported with the worst
    ratio lhs/rhs first.  Passing this check does not prove the weight
    admissible; failing it disproves the offered certificate.
    """
    if M < 1:
        raise DomainError(f"certificate needs M >= 1, got M={M}")
    sampling = sampling or PairSampling()
    base = _grid_points(sector, sampling)
    t = np.repeat(base, len(base))
    tp = np.tile(base, len(base))
    rng = np.random.default_rng(sampling.seed)
    t = np.concatenate([t, _random_points(sector, sampling.n_random, rng, sampling.r_max)])
    tp = np.concatenate([tp, _random_points(sector, sampling.n_random, rng, sampling.r_max)])

    lhs = v.eval(t)
    vsum = v.eval(t + tp)
    if not (np.all(np.isfinite(lhs)) and np.all(np.isfinite(vsum))
            and np.all(lhs > 0) and np.all(vsum > 0)):
        raise InvalidWeightError("weight evaluator returned non-positive or non-finite values")
    rhs = M * np.exp(w * np.abs(tp)) * vsum
    ratio = lhs / rhs
    bad = ratio > 1.0 + _REL_SLACK
    order = np.argsort(-ratio[bad])
    worst = [(complex(t[bad][i]), complex(tp[bad][i]), float(ratio[bad][i]))
             for i in order[:10]]
    return AdmissibilityReport(ok=not bad.any(), n_pairs=len(t),
                               worst_ratio=float(ratio.max()),
                               violations=tuple(worst))


# ---------------------------------------------------------------------------
# integrals


def _angular_edges(v: Weight, sector: Sector, r_hi: float,
                   th_lo: float | None = None, th_hi: float | None = None) -> np.ndarray:
    """Angular panel edges sized to the weight's angular variation.

    For radial weights the polar integrand is constant in the angle, so
    a single panel is exact; otherwise panels shrink like 1/r so that
    exponential-in-angle factors stay resolvable by a 16-point rule.
    """
    lo = -sector.alpha if th_lo is None else th_lo
    hi = sector.alpha if th_hi is None else th_hi
    if v.radial:
        n = 1
    else:
        n = max(4, int(math.ceil((hi - lo) * max(1.0, r_hi) / 2.0)))
    return np.linspace(lo, hi, n + 1)


def weight_rect_integral(v: Weight, rect, sector: Sector, npts: int = 16) -> float:
    """Integral of v over a polar rectangle, split at integer radii.

    This single routine is used both for series terms over unit annuli
    and for norms of rectangle indicators, so the two agree term by term
    up to reduction order.
    """
    r_edges = quad.radial_edges(rect.r_lo, rect.r_hi, 1.0)
    th_edges = _angular_edges(v, sector, rect.r_hi, rect.th_lo, rect.th_hi)
    return quad.integrate_polar(
        lambda rho, th: v.eval(rho * np.exp(1j * th)), r_edges, th_edges, npts)


@dataclass(frozen=True)
class IntegralEstimate:
    """Truncated sector integral plus a model-based tail estimate.

    `value` is the quadrature over the truncation, `tail` the analytic
    remainder estimate for the declared decay model (None when no model
    applies or the trend is not convergent), `total` their sum.
    """

    value: float
    tail: float | None
    verdict: str  # convergent-trend | divergent-trend | inconclusive
    R: float

    @property
    def total(self) -> float:
        return self.value + (self.tail or 0.0)


def trend_verdict(terms: np.ndarray) -> str:
    """Three-state convergence verdict from consecutive positive terms.

    Geometric shrink (ratio <= 0.9 sustained over the last ten terms)
    or a fitted power decay steeper than 1/k both count as convergent;
    non-decreasing terms count as divergent; anything else is
    inconclusive.
    """
    terms = np.asarray(terms, dtype=float)
    terms = terms[terms > 0]
    if len(terms) < 3:
        return "inconclusive"
    tail = terms[-min(10, len(terms)):]
    ratios = tail[1:] / tail[:-1]
    if np.all(ratios <= 0.9):
        return "convergent-trend"
    if np.all(ratios >= 1.0 - _REL_SLACK):
        return "divergent-trend"
    if np.any(ratios >= 1.0):
        return "inconclusive"
    # power-law fit: terms ~ k^(-p) converges iff p > 1
    k = np.arange(len(terms) - len(tail) + 1, len(terms) + 1, dtype=float)
    slope = np.polyfit(np.log(k), np.log(tail), 1)[0]
    if -slope >= 1.1:
        return "convergent-trend"
    if -slope <= 0.9:
        return "divergent-trend"
    return "inconclusive"


def _radial_density(v: Weight, rho: float, sector: Sector, npts: int = 16) -> float:
    """g(rho) = rho * integral of v(rho e^{i th}) over the angular span."""
    th_edges = _angular_edges(v, sector, rho)
    th, wt = quad.panel_nodes(th_edges, npts)
    return float(rho * np.sum(wt * v.eval(rho * np.exp(1j * th))))


def _tail_estimate(v: Weight, R: float, sector: Sector, model: str) -> float | None:
    """Remainder of the sector integral beyond radius R, per decay model.

    Fits the model to the radial density g at R-1 and R, then integrates
    the model to infinity.  exp: g ~ C exp(-c rho); power: g ~ C rho^-q
    (needs q > 1).
    """
    if model == "none" or R <= 1.0:
        return None
    g1 = _radial_density(v, R - 1.0, sector)
    g2 = _radial_density(v, R, sector)
    if g1 <= 0 or g2 <= 0 or g2 >= g1:
        return None
    if model == "exp":
        c = math.log(g1 / g2)
        return g2 / c
    if model == "power":
        q = math.log(g1 / g2) / math.log(R / (R - 1.0))
        if q <= 1.0:
            return None
        return g2 * R / (q - 1.0)
    raise DomainError(f"unknown tail model {model!r}")


def weight_integral(v: Weight, R: float, sector: Sector,
                    tail: str = "none", npts: int = 16) -> IntegralEstimate:
    """Integral of v over the truncated sector, with tail model and verdict.

    Divergence is reported in the verdict (from the unit-annulus terms),
    never raised: a growing weight simply yields 'divergent-trend' and
    no tail estimate.
    """
    if R <= 0:
        raise DomainError(f"truncation radius must be > 0, got {R}")
    from .sets import PolarRect  # local import to avoid a module cycle
    edges = quad.radial_edges(0.0, R, 1.0)
    terms = np.array([
        weight_rect_integral(v, PolarRect(a, b, -sector.alpha, sector.alpha), sector, npts)
        for a, b in zip(edges[:-1], edges[1:])
    ])
    verdict = trend_verdict(terms)
    value = float(np.sum(terms))
    tail_est = _tail_estimate(v, R, sector, tail) if verdict == "convergent-trend" else None
    return IntegralEstimate(value=value, tail=tail_est, verdict=verdict, R=R)


# ---------------------------------------------------------------------------
# compact lower bounds


@dataclass(frozen=True)
class CompactBound:
    """Lower bound for v on the closed truncation of radius R.

    `analytic` is guaranteed by the certificate: setting t = 0 in the
    growth inequality gives v(t') >= v(0) / (M exp(w |t'|)).  `grid_min`
    is the sampled minimum — tighter but heuristic.
    """

    analytic: float
    grid_min: float
    argmin: complex
    R: float


def grid_minimum(v: Weight, R: float, sector: Sector,
                 n_r: int = 81, n_theta: int = 33) -> tuple[float, complex]:
    """Sampled minimum of v over the closed truncation (endpoint-inclusive)."""
    r = np.linspace(0.0, R, n_r)
    th = np.linspace(-sector.alpha, sector.alpha, n_theta)
    z = r[:, None] * np.exp(1j * th[None, :])
    vals = v.eval(z)
    i, j = np.unravel_index(np.argmin(vals), vals.shape)
    return float(vals[i, j]), complex(z[i, j])


def compact_lower_bound(v: Weight, R: float, sector: Sector) -> CompactBound:
    """Certificate-backed lower bound of v on the closed ball of radius R."""
    if not v.certified:
        raise MissingCertificateError(
            f"weight '{v.family}' carries no certificate; only the sampled "
            "grid minimum is available (see grid_minimum)")
    cert = v.certificate
    v0 = float(v.eval(np.array([0j]))[0])
    # e^{w|t'|} is maximised at |t'| = R only when w >= 0; for w < 0 the
    # inequality is strongest at the origin
    analytic = v0 / (cert.M * math.exp(max(cert.w, 0.0) * R))
    gmin, argmin = grid_minimum(v, R, sector)
    return CompactBound(analytic=analytic, grid_min=gmin, argmin=argmin, R=R)


# ---------------------------------------------------------------------------
# JSON specs


_FAMILIES = {
    "exp_decay": lambda params: exp_decay(),
    "poly_decay": lambda params: poly_decay(),
    "vertical_exp": lambda params: vertical_exp(),
    "constant": lambda params: constant_weight(params.get("value", 1.0)),
}


def weight_from_spec(spec: dict) -> Weight:
    """Build a weight from a scenario JSON spec {family, params, certificate}."""
    from .errors import ConfigError
    family = spec.get("family")
    if family not in _FAMILIES:
        raise ConfigError(f"unknown weight family {family!r}")
    w = _FAMILIES[family](spec.get("params", {}))
    cert = spec.get("certificate")
    if cert is not None:
        w = Weight(w.evaluator, family=w.family,
                   certificate=Certificate(float(cert["M"]), float(cert["w"])),
                   radial=w.radial, params=w.params)
    return w


def weight_to_spec(v: Weight) -> dict:
    spec: dict = {"family": v.family, "params": {}}
    if v.family == "constant" and v.params:
        spec["params"]["value"] = v.params[0]
    if v.certificate is not None:
        spec["certificate"] = {"M": v.certificate.M, "w": v.certificate.w}
    return spec
