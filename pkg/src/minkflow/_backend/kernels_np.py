"""NumPy implementation of the mesh kernels (pure fallback backend).

Mirrors minkflow._backend._kernels (Cython) exactly.  All reductions run
through numpy's pairwise summation over contiguous float64 arrays, so results
are deterministic for a fixed input regardless of thread count.

Curvature is passed as an int K in {-1, 0, +1}; vertices live in R^3 (K=0) or
R^4 (otherwise), with the Minkowski signature (-,+,+,+) when K=-1.
"""

from __future__ import annotations

import numpy as np

from ..errors import MeshIntegrityError

KIND = "python"


def _inner(curv: int, a, b):
    g = np.einsum("...i,...i->...", a, b)
    if curv == -1:
        g = g - 2.0 * a[..., 0] * b[..., 0]
    return g


def exp_flow(curv: int, verts, dirs, t: float):
    """Flow every vertex along its unit direction by arc length t."""
    if curv == 0:
        return verts + t * dirs
    if curv == 1:
        c, s = np.cos(t), np.sin(t)
    else:
        c, s = np.cosh(t), np.sinh(t)
    out = c * verts + s * dirs
    out /= np.sqrt(np.abs(_inner(curv, out, out)))[..., None]
    return out


def tri_area_sum(curv: int, verts, faces) -> float:
    """Total chordal area: sum over faces of sqrt(det Gram(e1, e2)) / 2."""
    v = verts[faces]
    e1 = v[:, 1, :] - v[:, 0, :]
    e2 = v[:, 2, :] - v[:, 0, :]
    g11 = _inner(curv, e1, e1)
    g12 = _inner(curv, e1, e2)
    g22 = _inner(curv, e2, e2)
    det = g11 * g22 - g12 * g12
    if np.any(det < -1e-9 * np.maximum(g11 * g22, 1e-300)):
        raise MeshIntegrityError("face with nonspacelike span (negative Gram determinant)")
    return float(0.5 * np.sum(np.sqrt(np.maximum(det, 0.0))))


def flow_area(curv: int, verts, normals, faces, t: float) -> float:
    """Area of the surface flowed by t along the given per-vertex normals."""
    return tri_area_sum(curv, exp_flow(curv, verts, normals, t), faces)


def volume_quad(curv: int, weights, radii) -> float:
    """Quadrature sum_i w_i * F_K(rho_i) with F_K the radial volume primitive."""
    if curv == 0:
        f = radii**3 / 3.0
    elif curv == -1:
        f = np.sinh(2.0 * radii) / 4.0 - radii / 2.0
    else:
        f = radii / 2.0 - np.sin(2.0 * radii) / 4.0
    return float(np.sum(weights * f))


def triangle_solid_angle_thirds(dirs, faces) -> np.ndarray:
    """Per-vertex accumulation of one third of incident flat-triangle solid angles.

    Solid angle of the cone over a triangle of unit vectors (a, b, c), signed
    by orientation; consistently outward-oriented faces must give positive
    values.  Unnormalized: callers rescale the total to 4*pi.
    """
    a = dirs[faces[:, 0]]
    b = dirs[faces[:, 1]]
    c = dirs[faces[:, 2]]
    triple = np.einsum("fi,fi->f", a, np.cross(b, c))
    denom = (
        1.0
        + np.einsum("fi,fi->f", a, b)
        + np.einsum("fi,fi->f", b, c)
        + np.einsum("fi,fi->f", c, a)
    )
    omega = 2.0 * np.arctan2(triple, denom)
    if np.any(omega <= 0.0):
        raise MeshIntegrityError("nonpositive solid angle: face orientation is broken")
    out = np.zeros(dirs.shape[0])
    third = omega / 3.0
    for k in range(3):
        np.add.at(out, faces[:, k], third)
    return out


def profile_gradient_normals(curv: int, dirs, radii, neighbors) -> np.ndarray:
    """Outward unit normals of the radial graph rho(u) from one-ring gradient fits.

    For each vertex, fit rho over its ring in geodesic coordinates of the
    parameter sphere (rows [1, x, y], the constant absorbing the fit offset;
    the center vertex contributes the row [1, 0, 0]).  The normal is then

        nu  ~  radial - (g1 / sn_K(rho)) * W1 - (g2 / sn_K(rho)) * W2

    with (g1, g2) the fitted gradient, (w1, w2) an orthonormal tangent frame
    at u on the parameter sphere and W_a its ambient embedding.  Exactly
    radial when the profile is constant.
    """
    n = dirs.shape[0]
    mask = neighbors >= 0
    idx = np.where(mask, neighbors, 0)
    nd = dirs[idx]                      # (N, K, 3)
    rnb = radii[idx]                    # (N, K)
    m = mask.astype(float)

    u = dirs
    # deterministic tangent frame: axis with the smallest |component| of u
    ax = np.argmin(np.abs(u), axis=1)
    a = np.zeros_like(u)
    a[np.arange(n), ax] = 1.0
    w1 = np.cross(u, a)
    w1 /= np.linalg.norm(w1, axis=1)[:, None]
    w2 = np.cross(u, w1)

    # log-map chart coordinates of the ring on the parameter sphere
    cosd = np.clip(np.einsum("nki,ni->nk", nd, u), -1.0, 1.0)
    tpart = nd - cosd[..., None] * u[:, None, :]
    tn = np.linalg.norm(tpart, axis=2)
    theta = np.arctan2(tn, cosd)
    scale = np.where(tn > 0.0, theta / np.maximum(tn, 1e-300), 0.0)
    x = scale * np.einsum("nki,ni->nk", tpart, w1)
    y = scale * np.einsum("nki,ni->nk", tpart, w2)

    # weighted normal equations for rows [1, x, y] -> rho
    s1 = m.sum(axis=1) + 1.0
    sx = (m * x).sum(axis=1)
    sy = (m * y).sum(axis=1)
    sxx = (m * x * x).sum(axis=1)
    sxy = (m * x * y).sum(axis=1)
    syy = (m * y * y).sum(axis=1)
    gram = np.empty((n, 3, 3))
    gram[:, 0, 0] = s1
    gram[:, 0, 1] = gram[:, 1, 0] = sx
    gram[:, 0, 2] = gram[:, 2, 0] = sy
    gram[:, 1, 1] = sxx
    gram[:, 1, 2] = gram[:, 2, 1] = sxy
    gram[:, 2, 2] = syy
    rhs = np.empty((n, 3))
    rhs[:, 0] = (m * rnb).sum(axis=1) + radii
    rhs[:, 1] = (m * x * rnb).sum(axis=1)
    rhs[:, 2] = (m * y * rnb).sum(axis=1)
    try:
        sol = np.linalg.solve(gram, rhs[:, :, None])[:, :, 0]
    except np.linalg.LinAlgError:
        raise MeshIntegrityError("degenerate one-ring: normal gradient fit is singular") from None
    g1 = sol[:, 1]
    g2 = sol[:, 2]

    if curv == 0:
        sn = radii
        nu = u - (g1 / sn)[:, None] * w1 - (g2 / sn)[:, None] * w2
    else:
        if curv == 1:
            c, s = np.cos(radii), np.sin(radii)
            radial = np.concatenate([(-s)[:, None], c[:, None] * u], axis=1)
        else:
            c, s = np.cosh(radii), np.sinh(radii)
            radial = np.concatenate([s[:, None], c[:, None] * u], axis=1)
        zeros = np.zeros((n, 1))
        w1e = np.concatenate([zeros, w1], axis=1)
        w2e = np.concatenate([zeros, w2], axis=1)
        sn = s
        nu = radial - (g1 / sn)[:, None] * w1e - (g2 / sn)[:, None] * w2e
    norm2 = _inner(curv, nu, nu)
    if np.any(norm2 <= 0.0):
        raise MeshIntegrityError("degenerate normal (nonpositive norm)")
    return nu / np.sqrt(norm2)[:, None]
