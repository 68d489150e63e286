"""Signed deficits for the total-mean-curvature inequalities, per curvature.

Every inequality is reported as deficit = LHS - RHS of its squared or
log-free form, so nonnegative means it holds and zero (within tolerance)
means equality.  Spheres sit exactly on the equality locus in all three
space forms, which pins the conventions:

    K =  0:   Adot^2 >= 16 pi A
    K = -1:   Adot   >= 4V + 4 pi log(1 + A/2pi + Adot/4pi)
    K = +1:   Adot^2 >= 16 pi A (1 - A/4pi)

Here Adot is the total mean curvature (the area rate under unit normal
flow), A the area, V the enclosed volume.

The module also carries the counterexample machinery for the *false*
hyperbolic strengthening Adot^2 >= 16 pi A (1 + A/4pi): hemisphere-like
surfaces collapsing onto a geodesic disk of radius R violate it once R
exceeds arccosh(pi^2 / (16 - pi^2)) ~ 1.0549, and the scan locates that
threshold by sign bisection.  Whether the plain Euclidean form holds in
hyperbolic space is left open: it is evaluated and recorded, never asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Optional

from .errors import GeometryDomainError, InequalityViolationError
from .summary import GeometricSummary

__all__ = [
    "DEFAULT_TOL",
    "DeficitReport",
    "ScanResult",
    "SmallSurfaceReduction",
    "counterexample_scan",
    "false_inequality_eval",
    "geodesic_disk_limits",
    "minkowski_deficit_euclidean",
    "minkowski_deficit_hyperbolic",
    "minkowski_deficit_spherical",
    "small_surface_reduction",
    "spherical_rigidity_indicator",
    "weaker_inequalities_hyperbolic",
]

TWO_PI = 2.0 * math.pi
FOUR_PI = 4.0 * math.pi

DEFAULT_TOL = 1e-9

# |x| below this counts as zero when comparing signs of algebraically
# identical quantities computed along different float paths
_SIGN_ZERO = 1e-12


@dataclass(frozen=True)
class DeficitReport:
    """One inequality evaluated at one summary, as a signed deficit."""

    name: str
    deficit: float
    holds: bool
    equality: bool
    tol: float
    inputs: GeometricSummary

    def __post_init__(self) -> None:
        if self.tol < 0.0:
            raise ValueError("tol must be nonnegative")
        if self.holds != (self.deficit >= -self.tol):
            raise ValueError("holds flag contradicts the deficit")
        if self.equality and not self.holds:
            raise ValueError("equality implies holds")

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "deficit": self.deficit,
            "holds": self.holds,
            "equality": self.equality,
            "tol": self.tol,
            "inputs": self.inputs.as_dict(),
        }


def _report(name: str, deficit: float, tol: float, inputs: GeometricSummary) -> DeficitReport:
    return DeficitReport(
        name=name,
        deficit=deficit,
        holds=deficit >= -tol,
        equality=abs(deficit) <= tol,
        tol=tol,
        inputs=inputs,
    )


def minkowski_deficit_euclidean(
    summary: GeometricSummary, tol: float = DEFAULT_TOL
) -> DeficitReport:
    """Adot^2 - 16 pi A; zero exactly at round spheres."""
    if summary.total_mean_curvature < 0.0:
        raise GeometryDomainError("total mean curvature must be nonnegative")
    ad = summary.total_mean_curvature
    return _report("minkowski_euclidean", ad * ad - 16.0 * math.pi * summary.area, tol, summary)


def minkowski_deficit_hyperbolic(
    summary: GeometricSummary, tol: float = DEFAULT_TOL
) -> DeficitReport:
    """Adot - 4V - 4 pi log(1 + A/2pi + Adot/4pi)."""
    a, ad, v = summary.area, summary.total_mean_curvature, summary.volume
    if ad < 0.0 or a < 0.0 or v < 0.0:
        raise GeometryDomainError("hyperbolic deficit needs nonnegative area, rate, volume")
    deficit = ad - 4.0 * v - FOUR_PI * math.log1p(a / TWO_PI + ad / FOUR_PI)
    # same expression evaluated through the asymptotic-limit path; the two
    # must agree to rounding (scale-aware, the terms can be large)
    from .closed_form import hyperbolic_asymptotic_deficit

    other = 4.0 * hyperbolic_asymptotic_deficit(summary)
    scale = max(1.0, ad + 4.0 * v + FOUR_PI * abs(math.log1p(a / TWO_PI + ad / FOUR_PI)))
    if abs(deficit - other) > 1e-10 * scale:
        raise RuntimeError(
            f"deficit paths disagree: {deficit!r} vs {other!r} at {summary.as_dict()}"
        )
    return _report("minkowski_hyperbolic", deficit, tol, summary)


def minkowski_deficit_spherical(
    summary: GeometricSummary, tol: float = DEFAULT_TOL
) -> DeficitReport:
    """Adot^2 - 16 pi A (1 - A/4pi); area capped at 4 pi (hemisphere bound)."""
    a, ad = summary.area, summary.total_mean_curvature
    if ad < 0.0 or a < 0.0:
        raise GeometryDomainError("spherical deficit needs nonnegative area and rate")
    if a > FOUR_PI:
        raise GeometryDomainError(
            f"no convex surface inside a hemisphere has area {a} > 4*pi"
        )
    deficit = ad * ad - 16.0 * math.pi * a * (1.0 - a / FOUR_PI)
    return _report("minkowski_spherical", deficit, tol, summary)


def spherical_rigidity_indicator(summary: GeometricSummary) -> float:
    """Oscillation amplitude R of the spherical area series.

    R - 1 carries the same sign as the spherical deficit (they are the same
    quantity up to the positive factor 16 pi^2), so R >= 1 is the inequality
    and R = 1 its equality case.
    """
    from .closed_form import spherical_series

    amplitude = spherical_series(summary).r_sph
    deficit = minkowski_deficit_spherical(summary).deficit
    lhs = 0 if abs(amplitude - 1.0) < _SIGN_ZERO else math.copysign(1.0, amplitude - 1.0)
    rhs = 0 if abs(deficit) < _SIGN_ZERO * 16.0 * math.pi**2 else math.copysign(1.0, deficit)
    if lhs != rhs:
        raise RuntimeError(
            f"amplitude sign {lhs} disagrees with deficit sign {rhs} at {summary.as_dict()}"
        )
    return amplitude


def weaker_inequalities_hyperbolic(
    summary: GeometricSummary, tol: float = DEFAULT_TOL
) -> list[DeficitReport]:
    """Three weaker-than-main hyperbolic comparisons, as reports.

    The first two hold for convex surfaces; the third (the flat-space form
    Adot^2 >= 16 pi A transplanted to hyperbolic space) is an open question,
    so it is reported but must never be asserted anywhere downstream.
    """
    a, ad, v = summary.area, summary.total_mean_curvature, summary.volume
    return [
        _report("mean_curvature_vs_volume", ad - 4.0 * v, tol, summary),
        _report("rate_square_vs_area_square", ad * ad - a * a, tol, summary),
        _report("euclidean_form_open_question", ad * ad - 16.0 * math.pi * a, tol, summary),
    ]


def false_inequality_eval(
    summary: GeometricSummary, tol: float = DEFAULT_TOL
) -> DeficitReport:
    """Adot^2 - 16 pi A (1 + A/4pi): the over-strengthened hyperbolic form.

    Informational only; disk-like surfaces drive this negative, which is the
    whole point of the counterexample scan.
    """
    a, ad = summary.area, summary.total_mean_curvature
    deficit = ad * ad - 16.0 * math.pi * a * (1.0 + a / FOUR_PI)
    return _report("false_hyperbolic_strengthening", deficit, tol, summary)


def geodesic_disk_limits(radius: float) -> GeometricSummary:
    """Limit data of surfaces collapsing onto a geodesic disk of that radius.

    Area tends to 4 pi (cosh R - 1) (both faces of the disk), total mean
    curvature to 2 pi^2 sinh R (the half-turn of the normal across the rim),
    and the enclosed volume to 0.
    """
    if not (radius > 0.0 and math.isfinite(radius)):
        raise GeometryDomainError(f"disk radius must be positive and finite, got {radius}")
    return GeometricSummary(
        area=FOUR_PI * (math.cosh(radius) - 1.0),
        total_mean_curvature=2.0 * math.pi**2 * math.sinh(radius),
        volume=0.0,
    )


@dataclass(frozen=True)
class ScanResult:
    """Outcome of a counterexample scan over disk radii."""

    first_violation_radius: Optional[float]
    bisected_threshold: Optional[float]
    grid_points: int


def _false_deficit(radius: float) -> float:
    return false_inequality_eval(geodesic_disk_limits(radius)).deficit


def counterexample_scan(r_min: float, r_max: float, step: float) -> ScanResult:
    """Scan disk limits for the first radius violating the false inequality.

    Along the way, assert that the true hyperbolic deficit and both weaker
    ones stay >= -1e-9 on the whole grid (they must; a dip is a bug).  When
    a violation is found, the sign change is bisected to 1e-9.
    """
    if not (0.0 < r_min < r_max):
        raise GeometryDomainError(f"need 0 < r_min < r_max, got [{r_min}, {r_max}]")
    if not (step > 0.0):
        raise GeometryDomainError(f"step must be positive, got {step}")
    count = int(math.floor((r_max - r_min) / step + 1e-12)) + 1
    first: Optional[float] = None
    for k in range(count):
        r = r_min + k * step
        s = geodesic_disk_limits(r)
        guarded = [minkowski_deficit_hyperbolic(s)] + weaker_inequalities_hyperbolic(s)[:2]
        for rep in guarded:
            if rep.deficit < -1e-9:
                raise InequalityViolationError(
                    f"{rep.name} dipped to {rep.deficit} at disk radius {r}"
                )
        if first is None and _false_deficit(r) < 0.0:
            first = r
    if first is None:
        return ScanResult(None, None, count)

    lo = first - step
    # the deficit vanishes at radius 0 and is positive just above it, so a
    # positive endpoint always exists below the violation
    while lo <= 0.0 or _false_deficit(lo) <= 0.0:
        lo = first / 2.0 if lo <= 0.0 else lo / 2.0
        if lo < 1e-12:
            raise InequalityViolationError(
                "no positive endpoint found below the first violation"
            )
    hi = first
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if _false_deficit(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return ScanResult(first, 0.5 * (lo + hi), count)


@dataclass(frozen=True)
class SmallSurfaceReduction:
    """The exponential small-surface comparison and its quadratic shadow.

    exact_lhs = e^x - x - 1 with x = Adot/4pi, exact_rhs = A/2pi; their
    difference matches second_order_deficit/(32 pi^2) up to a cubic-in-x
    remainder, which is how the flat-space inequality reappears at small
    scales.
    """

    exact_lhs: float
    exact_rhs: float
    second_order_deficit: float


def small_surface_reduction(summary: GeometricSummary) -> SmallSurfaceReduction:
    if summary.total_mean_curvature < 0.0:
        raise GeometryDomainError("total mean curvature must be nonnegative")
    x = summary.total_mean_curvature / FOUR_PI
    ad = summary.total_mean_curvature
    return SmallSurfaceReduction(
        exact_lhs=math.expm1(x) - x,
        exact_rhs=summary.area / TWO_PI,
        second_order_deficit=ad * ad - 16.0 * math.pi * summary.area,
    )
