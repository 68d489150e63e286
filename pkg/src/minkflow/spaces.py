"""Exact geometry of the three constant-curvature model 3-spaces.

Euclidean 3-space is used directly.  The round 3-sphere is the unit sphere in
R^4.  Hyperbolic 3-space is the upper sheet of the unit hyperboloid in
Minkowski R^{3,1}, inner product -x0*y0 + x1*y1 + x2*y2 + x3*y3.  Geodesics
from a point p with unit tangent v are

    K =  0:   p + t*v
    K = +1:   cos(t)*p  + sin(t)*v
    K = -1:   cosh(t)*p + sinh(t)*v

so flowing a surface along its normals is evaluated exactly, never
time-stepped.  Points are re-projected onto the constraint set after each
geodesic step (divide by sqrt(|<p,p>|)) to suppress drift.

Constraint residuals are measured relative to the squared Euclidean magnitude
of the point: for large hyperboloid points the absolute residual of
cosh(t)^2 - sinh(t)^2 - 1 is dominated by rounding even when the point is as
accurate as doubles allow, while the relative residual stays near machine
epsilon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import GeometryDomainError

# Constraint residual accepted when constructing validated points/tangents.
CONSTRAINT_TOL = 1e-12
# Looser tolerance for user-supplied directions (unit norm, tangency).
UNIT_TOL = 1e-9


class Space(Enum):
    """The three model spaces, keyed by their sectional curvature K."""

    EUCLIDEAN = 0
    HYPERBOLIC = -1
    SPHERICAL = 1

    @property
    def curvature(self) -> int:
        return self.value

    @property
    def ambient_dim(self) -> int:
        return 3 if self is Space.EUCLIDEAN else 4

    @property
    def json_name(self) -> str:
        return self.name.lower()

    @classmethod
    def from_name(cls, name: str) -> "Space":
        try:
            return cls[name.upper()]
        except (KeyError, AttributeError):
            raise ValueError(
                f"unknown space {name!r}; expected 'euclidean', 'hyperbolic' or 'spherical'"
            ) from None


def basepoint(space: Space) -> np.ndarray:
    """Canonical center: the origin of R^3, or (1,0,0,0) on the curved models."""
    if space is Space.EUCLIDEAN:
        return np.zeros(3)
    p = np.zeros(4)
    p[0] = 1.0
    return p


def ambient_inner(space: Space, a, b):
    """Ambient inner product, batched over leading axes.

    Euclidean/spherical: the dot product.  Hyperbolic: the Minkowski form with
    signature (-,+,+,+).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape[-1] != space.ambient_dim or b.shape[-1] != space.ambient_dim:
        raise ValueError(
            f"expected vectors of dimension {space.ambient_dim} for {space.json_name}"
        )
    g = np.einsum("...i,...i->...", a, b)
    if space is Space.HYPERBOLIC:
        g = g - 2.0 * a[..., 0] * b[..., 0]
    return g


def constraint_residual(space: Space, coords) -> np.ndarray:
    """Scale-relative deviation of coords from the model constraint set."""
    coords = np.asarray(coords, dtype=float)
    if space is Space.EUCLIDEAN:
        return np.zeros(coords.shape[:-1])
    target = 1.0 if space is Space.SPHERICAL else -1.0
    size = np.einsum("...i,...i->...", coords, coords)
    res = np.abs(ambient_inner(space, coords, coords) - target)
    return res / np.maximum(size, 1.0)


def renormalize(space: Space, coords) -> np.ndarray:
    """Re-project coords onto the constraint set (no-op in Euclidean space)."""
    coords = np.asarray(coords, dtype=float)
    if space is Space.EUCLIDEAN:
        return coords
    scale = np.sqrt(np.abs(ambient_inner(space, coords, coords)))
    return coords / scale[..., None]


@dataclass(frozen=True, eq=False)
class Point:
    """A validated point of one of the model spaces."""

    space: Space
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float)
        if coords.shape != (self.space.ambient_dim,):
            raise ValueError(
                f"point in {self.space.json_name} needs shape "
                f"({self.space.ambient_dim},), got {coords.shape}"
            )
        object.__setattr__(self, "coords", coords)
        if float(constraint_residual(self.space, coords)) > CONSTRAINT_TOL:
            raise GeometryDomainError("coordinates do not satisfy the model constraint")
        if self.space is Space.HYPERBOLIC and coords[0] <= 0.0:
            raise GeometryDomainError("hyperboloid points must lie on the upper sheet")


@dataclass(frozen=True, eq=False)
class TangentVector:
    """An ambient vector attached to, and tangent at, a base point."""

    base: Point
    dir: np.ndarray

    def __post_init__(self):
        d = np.array(self.dir, dtype=float)
        if d.shape != (self.space.ambient_dim,):
            raise ValueError("tangent vector dimension does not match its base point")
        object.__setattr__(self, "dir", d)
        if self.space is not Space.EUCLIDEAN:
            # tangency <base, dir> = 0 measured relative to the factor magnitudes
            scale = max(1.0, float(np.linalg.norm(self.base.coords) * np.linalg.norm(d)))
            if abs(float(ambient_inner(self.space, self.base.coords, d))) > CONSTRAINT_TOL * scale:
                raise GeometryDomainError("vector is not tangent at its base point")

    @property
    def space(self) -> Space:
        return self.base.space


def flow_factors(space: Space, t):
    """The pair (c(t), s(t)) with geodesic gamma(t) = c*base + s*dir."""
    t = np.asarray(t, dtype=float)
    if space is Space.EUCLIDEAN:
        return np.ones_like(t), t
    if space is Space.SPHERICAL:
        return np.cos(t), np.sin(t)
    return np.cosh(t), np.sinh(t)


def exp_map(v: TangentVector, t: float) -> Point:
    """Geodesic point at arc length t from v.base with initial velocity v.dir.

    v.dir must be unit under the ambient inner product (so t is arc length).
    The result is re-projected onto the constraint set.
    """
    space = v.space
    norm2 = float(ambient_inner(space, v.dir, v.dir))
    if abs(norm2 - 1.0) > UNIT_TOL:
        raise ValueError("exp_map requires a unit tangent direction")
    c, s = flow_factors(space, float(t))
    coords = c * v.base.coords + s * v.dir
    return Point(space, renormalize(space, coords))


def transport_along(v: TangentVector, t: float) -> TangentVector:
    """Parallel transport of v along its own geodesic to exp_map(v, t).

    The velocity of the geodesic: c'(t)*base + s'(t)*dir.
    """
    space = v.space
    p = exp_map(v, t)
    tt = float(t)
    if space is Space.EUCLIDEAN:
        return TangentVector(p, np.array(v.dir, dtype=float))
    if space is Space.SPHERICAL:
        d = -math.sin(tt) * v.base.coords + math.cos(tt) * v.dir
    else:
        d = math.sinh(tt) * v.base.coords + math.cosh(tt) * v.dir
    return TangentVector(p, d)


def project_to_tangent(space: Space, p, w) -> np.ndarray:
    """Component of w tangent at p: w - (<w,p>/<p,p>) p.  Identity for K = 0."""
    w = np.asarray(w, dtype=float)
    if space is Space.EUCLIDEAN:
        return np.array(w)
    p = np.asarray(p, dtype=float)
    coef = np.asarray(ambient_inner(space, w, p) / ambient_inner(space, p, p))
    return w - coef[..., None] * p


def geodesic_distance(space: Space, p, q):
    """Geodesic distance, batched over leading axes."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if space is Space.EUCLIDEAN:
        return np.linalg.norm(q - p, axis=-1)
    g = ambient_inner(space, p, q)
    if space is Space.SPHERICAL:
        return np.arccos(np.clip(g, -1.0, 1.0))
    return np.arccosh(np.maximum(-g, 1.0))


def distance_to_center(space: Space, coords):
    """Geodesic distance to the canonical basepoint (cheap special case)."""
    coords = np.asarray(coords, dtype=float)
    if space is Space.EUCLIDEAN:
        return np.linalg.norm(coords, axis=-1)
    if space is Space.SPHERICAL:
        return np.arccos(np.clip(coords[..., 0], -1.0, 1.0))
    return np.arccosh(np.maximum(coords[..., 0], 1.0))


def radial_direction(space: Space, coords, center=None) -> np.ndarray:
    """Unit tangent at coords pointing away from the center along the radial geodesic."""
    coords = np.asarray(coords, dtype=float)
    if center is None:
        center = basepoint(space)
    center = np.asarray(center, dtype=float)
    if space is Space.EUCLIDEAN:
        diff = coords - center
        d = np.linalg.norm(diff, axis=-1)
        if np.any(d <= 0.0):
            raise GeometryDomainError("radial direction undefined at the center")
        return diff / d[..., None]
    d = geodesic_distance(space, center, coords)
    c, s = flow_factors(space, d)
    if np.any(s <= 0.0):
        raise GeometryDomainError("radial direction undefined at the center")
    return (c[..., None] * coords - center) / s[..., None]


def log_vectors(space: Space, base, others) -> np.ndarray:
    """Ambient tangent vectors log_base(others); length equals geodesic distance.

    Batched: base (..., d) against others (..., d) with broadcasting.
    """
    base = np.asarray(base, dtype=float)
    others = np.asarray(others, dtype=float)
    if space is Space.EUCLIDEAN:
        return others - base
    d = geodesic_distance(space, base, others)
    c, s = flow_factors(space, d)
    u = (others - c[..., None] * base)
    safe = np.maximum(s, 1e-300)
    out = (d / safe)[..., None] * u
    # the limit d -> 0 is the zero vector
    return np.where(d[..., None] > 0.0, out, 0.0)


def radial_volume_primitive(space: Space, rho):
    """Per-solid-angle volume integral int_0^rho sn_K(s)^2 ds.

    sn_K is s, sin(s) or sinh(s); 4*pi times this value is the volume of the
    geodesic ball of radius rho.  Requires rho >= 0 and, on the 3-sphere,
    rho < pi (the radial chart degenerates at the antipode).
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0.0):
        raise GeometryDomainError("radius must be nonnegative")
    if space is Space.EUCLIDEAN:
        out = rho**3 / 3.0
    elif space is Space.HYPERBOLIC:
        out = np.sinh(2.0 * rho) / 4.0 - rho / 2.0
    else:
        if np.any(rho >= math.pi):
            raise GeometryDomainError("radius must stay below pi on the 3-sphere")
        out = rho / 2.0 - np.sin(2.0 * rho) / 4.0
    return out if out.ndim else float(out)
