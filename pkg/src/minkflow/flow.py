"""Normal flow of discrete surfaces and discrete-vs-analytic comparison.

Flowing a parallel surface needs no time stepping: each vertex rides its own
geodesic, so S_t comes from S by one exponential map per vertex, exact for
any t.  After a step the mesh is re-derived from scratch as a radial graph
(radii, directions, normals, quadrature weights all recomputed), keeping
every t self-consistent with the surface module's estimators.

The flow is defined for all t >= 0 in the flat and hyperbolic spaces; on the
3-sphere normals focus at the antipodal conjugate locus, so t is capped at
pi/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from . import _backend
from .closed_form import FlowSeries, series_for
from .errors import GeometryDomainError, MeshIntegrityError
from .icosphere import solid_angle_weights
from .spaces import Space, distance_to_center
from .surface import (
    SurfaceMesh,
    enclosed_volume,
    summarize,
    surface_area,
)

__all__ = [
    "ComparisonReport",
    "ValidityWindow",
    "compare_analytic",
    "compare_series",
    "default_comparison_grid",
    "flow_series",
    "flow_surface",
    "ode_residual",
    "validity_window",
]


@dataclass(frozen=True)
class ValidityWindow:
    """Closed-below, open-above time range on which the flow is defined."""

    t_min: float
    t_max: float

    def __contains__(self, t: float) -> bool:
        return self.t_min <= t < self.t_max


def validity_window(space: Space) -> ValidityWindow:
    """[0, inf) in the flat and hyperbolic spaces, [0, pi/2) on the sphere."""
    if space is Space.SPHERICAL:
        return ValidityWindow(0.0, math.pi / 2.0)
    return ValidityWindow(0.0, math.inf)


def flow_surface(mesh: SurfaceMesh, t: float) -> SurfaceMesh:
    """The parallel surface at distance t along the outward unit normals.

    Quadrature weights are recomputed from the flowed directions, not
    carried over: the flow tilts directions by O(amplitude), and stale
    weights would bias the volume at first order in the perturbation no
    matter how fine the mesh.
    """
    t = float(t)
    if t not in validity_window(mesh.space):
        raise GeometryDomainError(
            f"t={t} outside the flow window {validity_window(mesh.space)}"
        )
    curv = mesh.space.curvature
    coords = _backend.exp_flow(curv, mesh.coords, mesh.normals, t)
    radii = distance_to_center(mesh.space, coords)
    if not np.all(radii > 0.0):
        raise MeshIntegrityError("flowed surface touches the center")
    if mesh.space is Space.SPHERICAL and not np.all(radii < math.pi):
        raise MeshIntegrityError("flowed surface crosses the antipode")
    spatial = coords[:, -3:]
    dirs = spatial / np.linalg.norm(spatial, axis=1)[:, None]
    normals = _backend.profile_gradient_normals(curv, dirs, radii, np.asarray(mesh.neighbors))
    weights = solid_angle_weights(dirs, mesh.faces)
    for arr in (coords, radii, dirs, normals, weights):
        arr.setflags(write=False)
    return SurfaceMesh(
        space=mesh.space,
        subdivision=mesh.subdivision,
        directions=dirs,
        radii=radii,
        coords=coords,
        faces=mesh.faces,
        weights=weights,
        normals=normals,
        neighbors=mesh.neighbors,
    )


def flow_series(mesh: SurfaceMesh, t_grid: Iterable[float]) -> FlowSeries:
    """Sample area and volume of the flowed surface over the grid."""
    ts = tuple(float(t) for t in t_grid)
    areas = []
    volumes = []
    for t in ts:
        moved = flow_surface(mesh, t)
        areas.append(surface_area(moved))
        volumes.append(enclosed_volume(moved))
    return FlowSeries(
        t_values=ts, areas=tuple(areas), volumes=tuple(volumes), provenance="discrete"
    )


def ode_residual(series: FlowSeries, space: Space) -> list[float]:
    """Second-difference check of A'' = -4K A + 8 pi at interior grid points.

    The grid must be uniform (relative step spread below 1e-9); three points
    minimum.
    """
    ts = series.t_values
    if len(ts) < 3:
        raise GeometryDomainError("need at least 3 grid points for a second difference")
    steps = np.diff(ts)
    h = float(steps[0])
    if float(np.max(np.abs(steps - h))) > 1e-9 * h:
        raise GeometryDomainError("ODE residual needs a uniform t grid")
    a = np.asarray(series.areas)
    k = space.curvature
    second = (a[2:] - 2.0 * a[1:-1] + a[:-2]) / (h * h)
    return list(second - (-4.0 * k * a[1:-1] + 8.0 * math.pi))


@dataclass(frozen=True)
class ComparisonReport:
    """Worst-case relative discrepancies between discrete and analytic flow."""

    max_rel_area_err: float
    max_rel_vol_err: float
    grid_points: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "max_rel_area_err": self.max_rel_area_err,
            "max_rel_vol_err": self.max_rel_vol_err,
            "grid_points": self.grid_points,
        }


def compare_series(discrete: FlowSeries, analytic: FlowSeries) -> ComparisonReport:
    if discrete.t_values != analytic.t_values:
        raise GeometryDomainError("series grids differ; nothing to compare")
    da, aa = np.asarray(discrete.areas), np.asarray(analytic.areas)
    dv, av = np.asarray(discrete.volumes), np.asarray(analytic.volumes)
    area_err = float(np.max(np.abs(da - aa) / np.abs(aa)))
    vol_scale = np.maximum(np.abs(av), 1e-300)
    vol_err = float(np.max(np.abs(dv - av) / vol_scale))
    return ComparisonReport(area_err, vol_err, len(discrete.t_values))


def compare_analytic(mesh: SurfaceMesh, t_grid: Sequence[float]) -> ComparisonReport:
    """Flow the mesh and hold it against the closed-form series seeded by its summary."""
    summary = summarize(mesh)
    series = series_for(mesh.space, summary)
    analytic = series.sample(t_grid)
    discrete = flow_series(mesh, t_grid)
    return compare_series(discrete, analytic)


def default_comparison_grid(space: Space) -> tuple[float, ...]:
    """9 uniform samples: [0, 2], or [0, 0.9 * pi/2] inside the spherical window."""
    top = 0.9 * math.pi / 2.0 if space is Space.SPHERICAL else 2.0
    return tuple(np.linspace(0.0, top, 9))
