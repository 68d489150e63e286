"""Radial-graph surfaces over a subdivided icosphere, and their measurements.

A surface is the set of points at distance rho(u) from a fixed center, one
point per direction u of the parameter sphere.  The profile is

    rho(u) = base_radius * (1 + sum_i  c_i * f_i(u))

over the nine-function basis {1, x, y, z, xy, yz, zx, x^2 - y^2, 3z^2 - 1}
(the constant plus degree-1 and degree-2 harmonics restricted to the sphere).
All coefficients zero gives the geodesic sphere of radius base_radius.

Measurements:

  * area            flat-triangle (chordal) Gram areas of the embedded mesh
  * volume          per-direction radial primitive against solid-angle weights
  * mean curvature  first variation of area under unit normal flow, by a
                    Richardson-extrapolated central difference in t

The quadrature weights live on the *parameter* sphere, where the radial-graph
volume integral is exact in the directions; area and curvature see the
surface only through the embedded vertex positions and estimated normals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from . import _backend
from .errors import GeometryDomainError, MeshIntegrityError, SurfaceDefinitionError
from .icosphere import edge_count, icosphere, solid_angle_weights, vertex_neighbors
from .spaces import (
    Space,
    ambient_inner,
    constraint_residual,
    log_vectors,
    radial_direction,
)
from .summary import GeometricSummary

__all__ = [
    "BASIS_SIZE",
    "DEFAULT_SUBDIVISION",
    "ConvexityReport",
    "RadialGraphSpec",
    "SurfaceMesh",
    "basis_values",
    "build_radial_graph",
    "convexity_report",
    "enclosed_volume",
    "parse_surface_document",
    "summarize",
    "surface_area",
    "total_mean_curvature",
]

BASIS_SIZE = 9

DEFAULT_SUBDIVISION = 5

# validate() bounds; scale-relative where the quantity has a scale
_VALIDATE_TOL = 1e-9


def basis_values(dirs: np.ndarray) -> np.ndarray:
    """Evaluate the profile basis at unit directions; shape (N, 9)."""
    dirs = np.asarray(dirs, dtype=float)
    x, y, z = dirs[..., 0], dirs[..., 1], dirs[..., 2]
    one = np.ones_like(x)
    return np.stack(
        [one, x, y, z, x * y, y * z, z * x, x * x - y * y, 3.0 * z * z - 1.0],
        axis=-1,
    )


@dataclass(frozen=True)
class RadialGraphSpec:
    """Defining data of a radial-graph surface: where, how big, how bumpy."""

    space: Space
    base_radius: float
    coefficients: tuple[float, ...] = (0.0,) * BASIS_SIZE

    def __post_init__(self) -> None:
        if not isinstance(self.space, Space):
            raise SurfaceDefinitionError(f"space must be a Space, got {self.space!r}")
        if not (math.isfinite(self.base_radius) and self.base_radius > 0.0):
            raise SurfaceDefinitionError(
                f"base_radius must be positive and finite, got {self.base_radius}"
            )
        coeffs = tuple(float(c) for c in self.coefficients)
        if len(coeffs) != BASIS_SIZE:
            raise SurfaceDefinitionError(
                f"expected {BASIS_SIZE} coefficients, got {len(coeffs)}"
            )
        if not all(math.isfinite(c) for c in coeffs):
            raise SurfaceDefinitionError("coefficients must be finite")
        object.__setattr__(self, "coefficients", coeffs)

    def is_sphere(self) -> bool:
        return all(c == 0.0 for c in self.coefficients)

    def to_dict(self) -> dict[str, Any]:
        return {
            "space": self.space.json_name,
            "base_radius": self.base_radius,
            "coefficients": list(self.coefficients),
        }

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "RadialGraphSpec":
        spec, _ = parse_surface_document(doc)
        return spec


def parse_surface_document(doc: Mapping[str, Any]) -> tuple[RadialGraphSpec, int]:
    """Parse a surface document: {space, base_radius, coefficients?, subdivision?}.

    Returns the RadialGraphSpec together with the requested subdivision level
    (default 5).  Unknown keys are rejected so typos fail loudly.
    """
    if not isinstance(doc, Mapping):
        raise SurfaceDefinitionError(f"surface document must be a mapping, got {type(doc).__name__}")
    allowed = {"space", "base_radius", "coefficients", "subdivision"}
    extra = set(doc) - allowed
    if extra:
        raise SurfaceDefinitionError(f"unknown surface document keys: {sorted(extra)}")
    try:
        space = Space.from_name(doc["space"])
        base_radius = float(doc["base_radius"])
    except KeyError as exc:
        raise SurfaceDefinitionError(f"surface document missing key: {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise SurfaceDefinitionError(str(exc)) from None
    raw = doc.get("coefficients", (0.0,) * BASIS_SIZE)
    try:
        coeffs = tuple(float(c) for c in raw)
    except (TypeError, ValueError):
        raise SurfaceDefinitionError("coefficients must be a sequence of numbers") from None
    subdivision = doc.get("subdivision", DEFAULT_SUBDIVISION)
    if not isinstance(subdivision, int) or isinstance(subdivision, bool) or subdivision < 0:
        raise SurfaceDefinitionError(f"subdivision must be a nonnegative integer, got {subdivision!r}")
    return RadialGraphSpec(space, base_radius, coeffs), subdivision


@dataclass(frozen=True)
class SurfaceMesh:
    """An embedded radial graph: directions, radii, positions, and adjacency.

    ``coords`` live in the ambient model space (3 columns Euclidean, 4
    curved); ``directions`` stay on the parameter sphere.  ``weights`` are
    direction-sphere solid angles summing to 4*pi.  ``normals`` are outward
    unit normals in the ambient space.  All arrays are read-only.
    """

    space: Space
    subdivision: int
    directions: np.ndarray
    radii: np.ndarray
    coords: np.ndarray
    faces: np.ndarray
    weights: np.ndarray
    normals: np.ndarray
    neighbors: np.ndarray

    @property
    def vertex_count(self) -> int:
        return int(self.directions.shape[0])

    @property
    def face_count(self) -> int:
        return int(self.faces.shape[0])

    def euler_characteristic(self) -> int:
        return self.vertex_count - edge_count(self.faces) + self.face_count

    def validate(self) -> None:
        """Raise MeshIntegrityError unless the mesh is a sane closed surface."""
        n = self.vertex_count
        adim = self.space.ambient_dim
        if self.directions.shape != (n, 3) or self.radii.shape != (n,):
            raise MeshIntegrityError("direction/radius arrays are inconsistent")
        if self.coords.shape != (n, adim) or self.normals.shape != (n, adim):
            raise MeshIntegrityError("coordinate/normal arrays have the wrong ambient width")
        if self.weights.shape != (n,) or self.neighbors.shape[0] != n:
            raise MeshIntegrityError("weight/neighbor arrays are inconsistent")
        if self.euler_characteristic() != 2:
            raise MeshIntegrityError(
                f"mesh is not a closed 2-sphere: euler characteristic {self.euler_characteristic()}"
            )
        if not np.all(self.radii > 0.0):
            raise MeshIntegrityError("radial profile must stay positive")
        if self.space is Space.SPHERICAL and not np.all(self.radii < math.pi):
            raise MeshIntegrityError("radial profile reaches the antipode")
        if not np.all(self.weights > 0.0):
            raise MeshIntegrityError("solid-angle weights must be positive")
        if abs(float(np.sum(self.weights)) - 4.0 * math.pi) > _VALIDATE_TOL * 4.0 * math.pi:
            raise MeshIntegrityError("solid-angle weights do not sum to 4*pi")
        if float(np.max(constraint_residual(self.space, self.coords))) > _VALIDATE_TOL:
            raise MeshIntegrityError("vertex coordinates drift off the model surface")
        nrm2 = ambient_inner(self.space, self.normals, self.normals)
        if float(np.max(np.abs(nrm2 - 1.0))) > _VALIDATE_TOL:
            raise MeshIntegrityError("normals are not unit vectors")
        if self.space is not Space.EUCLIDEAN:
            tang = ambient_inner(self.space, self.normals, self.coords)
            if float(np.max(np.abs(tang))) > _VALIDATE_TOL * float(np.max(np.abs(self.radii)) + 1.0):
                raise MeshIntegrityError("normals are not tangent to the model surface")
        radial = radial_direction(self.space, self.coords)
        if float(np.min(ambient_inner(self.space, self.normals, radial))) <= 0.0:
            raise MeshIntegrityError("normals are not outward")


def build_radial_graph(
    spec: RadialGraphSpec, subdivision: int = DEFAULT_SUBDIVISION
) -> SurfaceMesh:
    """Embed the radial graph on the level-``subdivision`` icosphere."""
    if not isinstance(subdivision, int) or isinstance(subdivision, bool) or subdivision < 0:
        raise SurfaceDefinitionError(f"subdivision must be a nonnegative integer, got {subdivision!r}")
    dirs, faces = icosphere(subdivision)
    radii = spec.base_radius * (1.0 + basis_values(dirs) @ np.asarray(spec.coefficients))
    low = float(np.min(radii))
    if low <= 0.0:
        raise SurfaceDefinitionError(
            f"radial profile must stay positive; minimum over the mesh is {low:.6g}"
        )
    if spec.space is Space.SPHERICAL:
        high = float(np.max(radii))
        if high >= math.pi:
            raise SurfaceDefinitionError(
                f"radial profile must stay below the antipode (pi); maximum is {high:.6g}"
            )
    if spec.space is Space.EUCLIDEAN:
        coords = radii[:, None] * dirs
    else:
        c, s = (np.cos(radii), np.sin(radii)) if spec.space is Space.SPHERICAL else (
            np.cosh(radii), np.sinh(radii))
        coords = np.concatenate([c[:, None], s[:, None] * dirs], axis=1)
    neighbors = vertex_neighbors(subdivision)
    normals = _backend.profile_gradient_normals(
        spec.space.curvature, dirs, radii, np.asarray(neighbors)
    )
    weights = solid_angle_weights(dirs, faces)
    for arr in (radii, coords, normals, weights):
        arr.setflags(write=False)
    return SurfaceMesh(
        space=spec.space,
        subdivision=subdivision,
        directions=dirs,
        radii=radii,
        coords=coords,
        faces=faces,
        weights=weights,
        normals=normals,
        neighbors=neighbors,
    )


def surface_area(mesh: SurfaceMesh) -> float:
    """Chordal-triangle surface area of the embedded mesh."""
    return _backend.tri_area_sum(mesh.space.curvature, mesh.coords, mesh.faces)


def enclosed_volume(mesh: SurfaceMesh) -> float:
    """Volume enclosed by the radial graph, by exact per-direction integration."""
    return _backend.volume_quad(mesh.space.curvature, mesh.weights, mesh.radii)


def total_mean_curvature(mesh: SurfaceMesh, h: float = 1e-4) -> float:
    """Integral of mean curvature (sum of principal curvatures convention).

    Computed as the first variation of area under the unit normal flow: a
    central difference in the flow parameter, Richardson-extrapolated once to
    cancel the h^2 term.
    """
    if not (0.0 < h <= 1e-3):
        raise GeometryDomainError(f"step h must lie in (0, 1e-3], got {h}")
    curv = mesh.space.curvature

    def diff(step: float) -> float:
        ahead = _backend.flow_area(curv, mesh.coords, mesh.normals, mesh.faces, step)
        behind = _backend.flow_area(curv, mesh.coords, mesh.normals, mesh.faces, -step)
        return (ahead - behind) / (2.0 * step)

    return (4.0 * diff(h / 2.0) - diff(h)) / 3.0


def summarize(mesh: SurfaceMesh, h: float = 1e-4) -> GeometricSummary:
    """Area, total mean curvature, and volume in one record."""
    return GeometricSummary(
        area=surface_area(mesh),
        total_mean_curvature=total_mean_curvature(mesh, h),
        volume=enclosed_volume(mesh),
    )


@dataclass(frozen=True)
class ConvexityReport:
    """Outcome of the discrete convexity probe.

    ``min_shape_eigenvalue`` is the smallest principal curvature seen at any
    vertex (outward normal convention: spheres are positive).  The surface
    counts as convex when that minimum stays above ``-tolerance``, the
    tolerance shrinking with the mesh scale as 10 * 4^-subdivision.
    """

    convex: bool
    min_shape_eigenvalue: float
    worst_vertex: int
    tolerance: float


def convexity_report(mesh: SurfaceMesh) -> ConvexityReport:
    """Probe local convexity by one-ring quadratic fits in surface charts.

    At each vertex the ring is mapped into the tangent space by the ambient
    log map and split into tangent-plane coordinates (x, y) and a height z
    along the outward normal.  A no-intercept quadratic fit

        z  ~  g1 x + g2 y + q11 x^2/2 + q12 x y + q22 y^2/2

    gives the shape operator as -[[q11, q12], [q12, q22]] (heights bend away
    from an outward normal on a convex surface).  Requires ring valence >= 5;
    the icosphere guarantees it.
    """
    space = mesh.space
    n = mesh.vertex_count
    mask = mesh.neighbors >= 0
    valence = mask.sum(axis=1)
    if int(valence.min()) < 5:
        raise MeshIntegrityError("convexity probe needs one-ring valence >= 5 everywhere")
    idx = np.where(mask, mesh.neighbors, 0)
    ring = mesh.coords[idx]                               # (N, K, d)
    logs = log_vectors(space, mesh.coords[:, None, :], ring)

    nu = mesh.normals
    # tangent-plane frame orthogonal to nu (and to the position, when curved):
    # Gram-Schmidt on the two spatial axes least aligned with the normal, so
    # neither seed can collapse into span(position, nu)
    order = np.argsort(np.abs(nu[:, -3:]), axis=1)
    off = mesh.coords.shape[1] - 3
    rows = np.arange(n)
    seed = np.zeros_like(mesh.coords)
    seed[rows, off + order[:, 0]] = 1.0
    seed2 = np.zeros_like(mesh.coords)
    seed2[rows, off + order[:, 1]] = 1.0
    if space is not Space.EUCLIDEAN:
        pos2 = ambient_inner(space, mesh.coords, mesh.coords)
        seed = seed - (ambient_inner(space, seed, mesh.coords) / pos2)[:, None] * mesh.coords
        seed2 = seed2 - (ambient_inner(space, seed2, mesh.coords) / pos2)[:, None] * mesh.coords
    e1 = seed - ambient_inner(space, seed, nu)[:, None] * nu
    n1 = ambient_inner(space, e1, e1)
    e2 = (
        seed2
        - ambient_inner(space, seed2, nu)[:, None] * nu
        - (ambient_inner(space, seed2, e1) / np.maximum(n1, 1e-300))[:, None] * e1
    )
    n2 = ambient_inner(space, e2, e2)
    if float(np.min(n1)) < 1e-12 or float(np.min(n2)) < 1e-12:
        raise MeshIntegrityError("cannot build a tangent frame: normal far from radial")
    e1 /= np.sqrt(n1)[:, None]
    e2 /= np.sqrt(n2)[:, None]

    x = np.einsum("nkd,nd->nk", logs, e1)
    y = np.einsum("nkd,nd->nk", logs, e2)
    z = ambient_inner(space, logs, nu[:, None, :])
    m = mask.astype(float)

    # rescale chart lengths by the mean ring distance, else the 5x5 normal
    # equations are hopeless (entries span theta^2 .. theta^8)
    scale = (m * np.hypot(x, y)).sum(axis=1) / np.maximum(valence, 1)
    scale = np.maximum(scale, 1e-300)
    xs = x / scale[:, None]
    ys = y / scale[:, None]

    cols = np.stack([xs, ys, 0.5 * xs * xs, xs * ys, 0.5 * ys * ys], axis=2)  # (N, K, 5)
    cols = cols * m[..., None]
    zm = z * m
    gram = np.einsum("nka,nkb->nab", cols, cols)
    rhs = np.einsum("nka,nk->na", cols, zm)
    try:
        sol = np.linalg.solve(gram, rhs[:, :, None])[:, :, 0]
    except np.linalg.LinAlgError:
        raise MeshIntegrityError("degenerate one-ring: convexity fit is singular") from None
    q11 = sol[:, 2] / (scale * scale)
    q12 = sol[:, 3] / (scale * scale)
    q22 = sol[:, 4] / (scale * scale)

    # eigenvalues of the shape operator -[[q11,q12],[q12,q22]]
    half_tr = -(q11 + q22) / 2.0
    spread = np.hypot((q11 - q22) / 2.0, q12)
    min_eig = half_tr - spread
    worst = int(np.argmin(min_eig))
    tol = 10.0 * 4.0 ** (-mesh.subdivision)
    low = float(min_eig[worst])
    return ConvexityReport(
        convex=bool(low >= -tol),
        min_shape_eigenvalue=low,
        worst_vertex=worst,
        tolerance=tol,
    )
