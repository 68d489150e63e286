"""Closed-form evolution of area and volume under the unit normal flow.

Flowing a closed convex surface outward at unit speed in a space of constant
curvature K makes its area obey

    A''(t) = -4 K A(t) + 8 pi,

with V'(t) = A(t), so both functions are elementary: polynomials for K = 0,
exponentials e^{+-2t} for K = -1, and a 2t-periodic oscillation for K = +1.
Each series is determined by the initial summary (A0, Adot0, V0), where the
area rate Adot0 equals the total mean curvature of the starting surface.

The spherical amplitude/phase pair (R, theta) and the hyperbolic growth and
decay weights (R, T) are kept as first-class fields so structural statements
about them (R >= 1, theta windows, equality cases) can be tested directly.
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DegenerateCaseError, GeometryDomainError
from .exact import PI, PiPoly, poly_pow, poly_sub, to_fraction
from .spaces import Space
from .summary import GeometricSummary

__all__ = [
    "EuclideanSeries",
    "FlowSeries",
    "HyperbolicSeries",
    "SeriesCoefficients",
    "SphericalSeries",
    "equal_area_radius",
    "equal_area_radius_rate",
    "euclidean_series",
    "hyperbolic_asymptotic_deficit",
    "hyperbolic_isoperimetric_gap",
    "hyperbolic_series",
    "isoperimetric_deficit_polynomial",
    "isoperimetric_deficit_polynomial_exact",
    "rebase_series",
    "series_for",
    "sphere_geometry",
    "spherical_series",
]

TWO_PI = 2.0 * math.pi
FOUR_PI = 4.0 * math.pi

# amplitudes below this are the constant solution A = 2*pi in disguise;
# the phase carries no information there
_DEGENERATE_AMPLITUDE = 1e-15

PROVENANCES = frozenset({"analytic", "discrete"})


def _eval(t, fn):
    """Apply fn to t elementwise; scalars in, float out."""
    arr = fn(np.asarray(t, dtype=float))
    return float(arr) if arr.ndim == 0 else arr


@dataclass(frozen=True)
class FlowSeries:
    """A sampled flow: strictly increasing times with positive areas."""

    t_values: tuple[float, ...]
    areas: tuple[float, ...]
    volumes: tuple[float, ...]
    provenance: str

    def __post_init__(self) -> None:
        ts = tuple(float(x) for x in self.t_values)
        ar = tuple(float(x) for x in self.areas)
        vo = tuple(float(x) for x in self.volumes)
        if not (len(ts) == len(ar) == len(vo)):
            raise ValueError("t_values, areas, volumes must have equal lengths")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("t_values must be strictly increasing")
        if ts and ts[0] < 0.0:
            raise ValueError("t_values must be nonnegative")
        if any(a <= 0.0 for a in ar):
            raise ValueError("areas must be positive")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"provenance must be one of {sorted(PROVENANCES)}")
        object.__setattr__(self, "t_values", ts)
        object.__setattr__(self, "areas", ar)
        object.__setattr__(self, "volumes", vo)

    def to_csv(self, target: Union[str, os.PathLike, io.TextIOBase]) -> None:
        """Write rows under the header t,area,volume,provenance (17 digits)."""
        if isinstance(target, (str, os.PathLike)):
            with open(target, "w", newline="") as fh:
                self.to_csv(fh)
            return
        writer = csv.writer(target)
        writer.writerow(["t", "area", "volume", "provenance"])
        for t, a, v in zip(self.t_values, self.areas, self.volumes):
            writer.writerow([f"{t:.17g}", f"{a:.17g}", f"{v:.17g}", self.provenance])


@dataclass(frozen=True)
class SeriesCoefficients:
    """Analytic evaluators for one flow, anchored at its t=0 summary."""

    space: Space
    summary: GeometricSummary

    def area(self, t):
        raise NotImplementedError

    def area_rate(self, t):
        raise NotImplementedError

    def area_accel(self, t):
        raise NotImplementedError

    def volume(self, t):
        raise NotImplementedError

    def sample(self, t_values: Iterable[float]) -> FlowSeries:
        ts = tuple(float(t) for t in t_values)
        return FlowSeries(
            t_values=ts,
            areas=tuple(float(self.area(t)) for t in ts),
            volumes=tuple(float(self.volume(t)) for t in ts),
            provenance="analytic",
        )


@dataclass(frozen=True)
class EuclideanSeries(SeriesCoefficients):
    """A(t) = 4 pi t^2 + Adot0 t + A0;  V(t) = 4/3 pi t^3 + Adot0 t^2/2 + A0 t + V0."""

    def area(self, t):
        a0, ad0 = self.summary.area, self.summary.total_mean_curvature
        return _eval(t, lambda x: (FOUR_PI * x + ad0) * x + a0)

    def area_rate(self, t):
        ad0 = self.summary.total_mean_curvature
        return _eval(t, lambda x: 8.0 * math.pi * x + ad0)

    def area_accel(self, t):
        return _eval(t, lambda x: np.full_like(x, 8.0 * math.pi))

    def volume(self, t):
        a0, ad0, v0 = (
            self.summary.area,
            self.summary.total_mean_curvature,
            self.summary.volume,
        )
        return _eval(t, lambda x: ((FOUR_PI / 3.0 * x + 0.5 * ad0) * x + a0) * x + v0)


@dataclass(frozen=True)
class HyperbolicSeries(SeriesCoefficients):
    """A(t) = 2 pi R e^{2t} + 2 pi T e^{-2t} - 2 pi, with growth R and decay T."""

    r_hyp: float
    t_hyp: float

    def area(self, t):
        r, s = self.r_hyp, self.t_hyp
        return _eval(t, lambda x: TWO_PI * (r * np.exp(2.0 * x) + s * np.exp(-2.0 * x) - 1.0))

    def area_rate(self, t):
        r, s = self.r_hyp, self.t_hyp
        return _eval(t, lambda x: FOUR_PI * (r * np.exp(2.0 * x) - s * np.exp(-2.0 * x)))

    def area_accel(self, t):
        r, s = self.r_hyp, self.t_hyp
        return _eval(t, lambda x: 8.0 * math.pi * (r * np.exp(2.0 * x) + s * np.exp(-2.0 * x)))

    def volume(self, t):
        r, s, v0 = self.r_hyp, self.t_hyp, self.summary.volume
        return _eval(
            t,
            lambda x: math.pi * (r * np.exp(2.0 * x) - s * np.exp(-2.0 * x))
            - TWO_PI * x
            + math.pi * (s - r)
            + v0,
        )


@dataclass(frozen=True)
class SphericalSeries(SeriesCoefficients):
    """A(t) = 2 pi - 2 pi R cos(2t + theta); amplitude R >= 0, phase in [0, pi]."""

    r_sph: float
    theta: float
    degenerate: bool

    def area(self, t):
        r, th = self.r_sph, self.theta
        return _eval(t, lambda x: TWO_PI - TWO_PI * r * np.cos(2.0 * x + th))

    def area_rate(self, t):
        r, th = self.r_sph, self.theta
        return _eval(t, lambda x: FOUR_PI * r * np.sin(2.0 * x + th))

    def area_accel(self, t):
        r, th = self.r_sph, self.theta
        return _eval(t, lambda x: 8.0 * math.pi * r * np.cos(2.0 * x + th))

    def volume(self, t):
        r, th, v0 = self.r_sph, self.theta, self.summary.volume
        base = math.pi * r * math.sin(th) + v0
        return _eval(t, lambda x: TWO_PI * x - math.pi * r * np.sin(2.0 * x + th) + base)

    def area_max_time(self) -> float:
        """First t >= 0 where the area peaks: (pi - theta) / 2."""
        if self.degenerate:
            raise DegenerateCaseError("constant-area series has no area maximum")
        return (math.pi - self.theta) / 2.0


def _require(summary: GeometricSummary, need_rate: bool) -> None:
    if not (summary.area >= 0.0):
        raise GeometryDomainError(f"initial area must be nonnegative, got {summary.area}")
    if need_rate and not (summary.total_mean_curvature >= 0.0):
        raise GeometryDomainError(
            f"initial area rate must be nonnegative, got {summary.total_mean_curvature}"
        )


def euclidean_series(summary: GeometricSummary) -> EuclideanSeries:
    _require(summary, need_rate=False)
    return EuclideanSeries(Space.EUCLIDEAN, summary)


def hyperbolic_series(summary: GeometricSummary) -> HyperbolicSeries:
    _require(summary, need_rate=True)
    half_sum = 0.5 * (1.0 + summary.area / TWO_PI)
    half_diff = summary.total_mean_curvature / (2.0 * FOUR_PI)
    return HyperbolicSeries(
        Space.HYPERBOLIC, summary, r_hyp=half_sum + half_diff, t_hyp=half_sum - half_diff
    )


def spherical_series(summary: GeometricSummary) -> SphericalSeries:
    _require(summary, need_rate=True)
    cos_part = 1.0 - summary.area / TWO_PI
    sin_part = summary.total_mean_curvature / FOUR_PI
    amplitude = math.hypot(cos_part, sin_part)
    theta = math.atan2(sin_part, cos_part)  # sin_part >= 0 puts theta in [0, pi]
    return SphericalSeries(
        Space.SPHERICAL,
        summary,
        r_sph=amplitude,
        theta=theta,
        degenerate=amplitude < _DEGENERATE_AMPLITUDE,
    )


def series_for(space: Space, summary: GeometricSummary) -> SeriesCoefficients:
    if space is Space.EUCLIDEAN:
        return euclidean_series(summary)
    if space is Space.HYPERBOLIC:
        return hyperbolic_series(summary)
    return spherical_series(summary)


def sphere_geometry(space: Space, r: float) -> GeometricSummary:
    """Area, area rate, and volume of the geodesic sphere of radius r."""
    if not (r > 0.0 and math.isfinite(r)):
        raise GeometryDomainError(f"sphere radius must be positive and finite, got {r}")
    if space is Space.SPHERICAL and r > math.pi / 2.0:
        raise GeometryDomainError(
            f"spherical radius must not exceed pi/2, got {r}"
        )
    if space is Space.EUCLIDEAN:
        return GeometricSummary(FOUR_PI * r * r, 8.0 * math.pi * r, FOUR_PI / 3.0 * r**3)
    if space is Space.HYPERBOLIC:
        # 2 pi (cosh 2r - 1) = 4 pi sinh^2 r, exact down to the point limit
        return GeometricSummary(
            FOUR_PI * math.sinh(r) ** 2,
            FOUR_PI * math.sinh(2.0 * r),
            math.pi * math.sinh(2.0 * r) - TWO_PI * r,
        )
    return GeometricSummary(
        FOUR_PI * math.sin(r) ** 2,
        FOUR_PI * math.sin(2.0 * r),
        TWO_PI * r - math.pi * math.sin(2.0 * r),
    )


def equal_area_radius(space: Space, area: float) -> float:
    """Radius of the geodesic sphere with the given area."""
    if not (area > 0.0 and math.isfinite(area)):
        raise GeometryDomainError(f"area must be positive and finite, got {area}")
    if space is Space.EUCLIDEAN:
        return math.sqrt(area / FOUR_PI)
    if space is Space.HYPERBOLIC:
        return math.asinh(math.sqrt(area / FOUR_PI))
    if area > FOUR_PI:
        raise GeometryDomainError(f"no spherical sphere has area {area} > 4*pi")
    return math.asin(min(1.0, math.sqrt(area / FOUR_PI)))


def equal_area_radius_rate(space: Space, summary: GeometricSummary) -> float:
    """d/dt of the equal-area radius at t = 0: Adot0 / A'_sphere(r0)."""
    if not (summary.area > 0.0):
        raise GeometryDomainError(f"initial area must be positive, got {summary.area}")
    r0 = equal_area_radius(space, summary.area)
    rate_of_sphere = sphere_geometry(space, r0).total_mean_curvature
    if space is Space.SPHERICAL and rate_of_sphere < 1e-9:
        raise DegenerateCaseError(
            "equal-area sphere sits at the equator: dA/dr vanishes there"
        )
    return summary.total_mean_curvature / rate_of_sphere


def hyperbolic_asymptotic_deficit(summary: GeometricSummary) -> float:
    """t -> infinity limit of V(equal-area radius of S_t) - V(t).

    Equals Adot0/4 - V0 - pi*log(1 + A0/2pi + Adot0/4pi); the sampled gap
    approaches it with an exponentially small error.
    """
    _require(summary, need_rate=True)
    return (
        summary.total_mean_curvature / 4.0
        - summary.volume
        - math.pi * math.log1p(summary.area / TWO_PI + summary.total_mean_curvature / FOUR_PI)
    )


def hyperbolic_isoperimetric_gap(series: HyperbolicSeries, t: float) -> float:
    """V(equal-area radius of S_t) - V(t), evaluated cancellation-free.

    Both terms grow like pi*R*e^{2t}, so subtracting the closed forms loses
    one digit per 2.3 units of t.  Rewriting the difference around the
    combination 4RT - 1 (which is exactly 0 for spheres) keeps absolute
    accuracy at any t:

        gap = pi (4RT - 1)/(S + M) - pi log Z - pi (T - R) - V0,
        E = e^{2t},  P = R E + T/E,  M = R E - T/E,  S = sqrt(P^2 - 1),
        Z = 2R + (4RT - 1) / (E (S + M)).
    """
    r, s, v0 = series.r_hyp, series.t_hyp, series.summary.volume
    e = math.exp(2.0 * t)
    p = r * e + s / e
    if p < 1.0:
        raise GeometryDomainError(f"area is negative at t={t}; gap undefined")
    m = r * e - s / e
    big_s = math.sqrt(max(p * p - 1.0, 0.0))
    if big_s + m <= 0.0:
        raise GeometryDomainError(f"flow not expanding at t={t}; gap formula out of domain")
    cross = 4.0 * r * s - 1.0
    z = 2.0 * r + cross / (e * (big_s + m))
    return math.pi * cross / (big_s + m) - math.pi * math.log(z) - math.pi * (s - r) - v0


def isoperimetric_deficit_polynomial(summary: GeometricSummary) -> np.ndarray:
    """Coefficients (ascending, length 7) of A(t)^3 - 36 pi V(t)^2 for K = 0.

    The t^6 and t^5 coefficients cancel identically; the t^4 coefficient is
    3 pi (Adot0^2 - 16 pi A0).
    """
    a0, ad0, v0 = summary.area, summary.total_mean_curvature, summary.volume
    poly = np.polynomial.polynomial
    a = np.array([a0, ad0, FOUR_PI])
    v = np.array([v0, a0, ad0 / 2.0, FOUR_PI / 3.0])
    out = np.zeros(7)
    diff = poly.polysub(poly.polypow(a, 3), 36.0 * math.pi * poly.polypow(v, 2))
    out[: len(diff)] = diff
    return out


def isoperimetric_deficit_polynomial_exact(area, total_mean_curvature, volume) -> list[PiPoly]:
    """The same seven coefficients in exact arithmetic over Q[pi].

    Inputs may be ints, Fractions, or floats (converted exactly), so the
    cancellation of the leading coefficients is provable, not approximate.
    """
    a0 = PiPoly.constant(to_fraction(area))
    ad0 = to_fraction(total_mean_curvature)
    v0 = PiPoly.constant(to_fraction(volume))
    a = [a0, PiPoly.constant(ad0), 4 * PI]
    v = [v0, a0, PiPoly.constant(ad0 / 2), PiPoly.constant(to_fraction(4) / 3) * PI]
    thirty_six_pi = 36 * PI
    diff = poly_sub(poly_pow(a, 3), [thirty_six_pi * c for c in poly_pow(v, 2)])
    return diff + [PiPoly.zero()] * (7 - len(diff))


def rebase_series(series: SeriesCoefficients, t0: float) -> SeriesCoefficients:
    """Restart the flow from S_{t0}: the new evaluators are the old, shifted.

    t0 must stay in the window where the restarted data is admissible (area
    and volume nonnegative; area rate nonnegative where the space requires
    it), else GeometryDomainError.
    """
    moved = GeometricSummary(
        area=float(series.area(t0)),
        total_mean_curvature=float(series.area_rate(t0)),
        volume=float(series.volume(t0)),
    )
    try:
        return series_for(series.space, moved)
    except (GeometryDomainError, ValueError) as exc:
        raise GeometryDomainError(f"t0={t0} is outside the validity window: {exc}") from None
