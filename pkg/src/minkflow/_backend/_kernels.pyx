# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled mesh kernels.

Mirrors minkflow._backend.kernels_np function by function.  Reductions use
Kahan compensated summation, so results are deterministic and agree with the
NumPy backend to far better than 1e-12 relative.

Curvature is passed as an int K in {-1, 0, +1}; vertices live in R^3 (K=0) or
R^4 (otherwise), with the Minkowski signature (-,+,+,+) when K=-1.
"""

import numpy as np

from libc.math cimport atan2, cos, cosh, fabs, sin, sinh, sqrt

from ..errors import MeshIntegrityError

KIND = "compiled"


cdef inline double _inner_row(int curv, const double* a, const double* b, Py_ssize_t dim) noexcept nogil:
    cdef double g = 0.0
    cdef Py_ssize_t j
    for j in range(dim):
        g += a[j] * b[j]
    if curv == -1:
        g -= 2.0 * a[0] * b[0]
    return g


cdef void _exp_flow_into(int curv, const double[:, ::1] verts,
                         const double[:, ::1] dirs, double t,
                         double[:, ::1] out) noexcept nogil:
    cdef Py_ssize_t n = verts.shape[0]
    cdef Py_ssize_t dim = verts.shape[1]
    cdef Py_ssize_t i, j
    cdef double c, s, norm
    if curv == 0:
        for i in range(n):
            for j in range(dim):
                out[i, j] = verts[i, j] + t * dirs[i, j]
        return
    if curv == 1:
        c = cos(t)
        s = sin(t)
    else:
        c = cosh(t)
        s = sinh(t)
    for i in range(n):
        for j in range(dim):
            out[i, j] = c * verts[i, j] + s * dirs[i, j]
        norm = sqrt(fabs(_inner_row(curv, &out[i, 0], &out[i, 0], dim)))
        for j in range(dim):
            out[i, j] /= norm


def exp_flow(int curv, const double[:, ::1] verts, const double[:, ::1] dirs, double t):
    """Flow every vertex along its unit direction by arc length t."""
    out = np.empty((verts.shape[0], verts.shape[1]))
    cdef double[:, ::1] ov = out
    _exp_flow_into(curv, verts, dirs, t, ov)
    return out


cdef double _tri_area_core(int curv, const double[:, ::1] verts,
                           const int[:, ::1] faces, bint* bad) noexcept nogil:
    cdef Py_ssize_t nf = faces.shape[0]
    cdef Py_ssize_t dim = verts.shape[1]
    cdef Py_ssize_t f, j
    cdef int ia, ib, ic
    cdef double e1[4]
    cdef double e2[4]
    cdef double g11, g12, g22, det, term
    cdef double total = 0.0, comp = 0.0, y, tmp
    bad[0] = 0
    for f in range(nf):
        ia = faces[f, 0]
        ib = faces[f, 1]
        ic = faces[f, 2]
        for j in range(dim):
            e1[j] = verts[ib, j] - verts[ia, j]
            e2[j] = verts[ic, j] - verts[ia, j]
        g11 = _inner_row(curv, e1, e1, dim)
        g12 = _inner_row(curv, e1, e2, dim)
        g22 = _inner_row(curv, e2, e2, dim)
        det = g11 * g22 - g12 * g12
        tmp = g11 * g22
        if tmp < 1e-300:
            tmp = 1e-300
        if det < -1e-9 * tmp:
            bad[0] = 1
            return 0.0
        term = 0.5 * sqrt(det if det > 0.0 else 0.0)
        y = term - comp
        tmp = total + y
        comp = (tmp - total) - y
        total = tmp
    return total


def tri_area_sum(int curv, const double[:, ::1] verts, const int[:, ::1] faces):
    """Total chordal area: sum over faces of sqrt(det Gram(e1, e2)) / 2."""
    cdef bint bad = 0
    cdef double total = _tri_area_core(curv, verts, faces, &bad)
    if bad:
        raise MeshIntegrityError("face with nonspacelike span (negative Gram determinant)")
    return total


def flow_area(int curv, const double[:, ::1] verts, const double[:, ::1] normals,
              const int[:, ::1] faces, double t):
    """Area of the surface flowed by t along the given per-vertex normals."""
    flowed = np.empty((verts.shape[0], verts.shape[1]))
    cdef double[:, ::1] fv = flowed
    cdef bint bad = 0
    cdef double total
    with nogil:
        _exp_flow_into(curv, verts, normals, t, fv)
        total = _tri_area_core(curv, fv, faces, &bad)
    if bad:
        raise MeshIntegrityError("face with nonspacelike span (negative Gram determinant)")
    return total


def volume_quad(int curv, const double[:] weights, const double[:] radii):
    """Quadrature sum_i w_i * F_K(rho_i) with F_K the radial volume primitive."""
    cdef Py_ssize_t n = weights.shape[0]
    cdef Py_ssize_t i
    cdef double r, term
    cdef double total = 0.0, comp = 0.0, y, tmp
    for i in range(n):
        r = radii[i]
        if curv == 0:
            term = r * r * r / 3.0
        elif curv == -1:
            term = sinh(2.0 * r) / 4.0 - r / 2.0
        else:
            term = r / 2.0 - sin(2.0 * r) / 4.0
        term *= weights[i]
        y = term - comp
        tmp = total + y
        comp = (tmp - total) - y
        total = tmp
    return total


def triangle_solid_angle_thirds(const double[:, ::1] dirs, const int[:, ::1] faces):
    """Per-vertex accumulation of one third of incident flat-triangle solid angles.

    Solid angle of the cone over a triangle of unit vectors (a, b, c), signed
    by orientation; consistently outward-oriented faces must give positive
    values.  Unnormalized: callers rescale the total to 4*pi.
    """
    cdef Py_ssize_t nf = faces.shape[0]
    out = np.zeros(dirs.shape[0])
    cdef double[:] ov = out
    cdef Py_ssize_t f
    cdef int ia, ib, ic
    cdef const double* a
    cdef const double* b
    cdef const double* c
    cdef double cx, cy, cz, triple, denom, omega, third
    cdef bint bad = 0
    with nogil:
        for f in range(nf):
            ia = faces[f, 0]
            ib = faces[f, 1]
            ic = faces[f, 2]
            a = &dirs[ia, 0]
            b = &dirs[ib, 0]
            c = &dirs[ic, 0]
            cx = b[1] * c[2] - b[2] * c[1]
            cy = b[2] * c[0] - b[0] * c[2]
            cz = b[0] * c[1] - b[1] * c[0]
            triple = a[0] * cx + a[1] * cy + a[2] * cz
            denom = (1.0
                     + a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
                     + b[0] * c[0] + b[1] * c[1] + b[2] * c[2]
                     + c[0] * a[0] + c[1] * a[1] + c[2] * a[2])
            omega = 2.0 * atan2(triple, denom)
            if omega <= 0.0:
                bad = 1
                break
            third = omega / 3.0
            ov[ia] += third
            ov[ib] += third
            ov[ic] += third
    if bad:
        raise MeshIntegrityError("nonpositive solid angle: face orientation is broken")
    return out


def profile_gradient_normals(int curv, const double[:, ::1] dirs,
                             const double[:] radii, const int[:, ::1] neighbors):
    """Outward unit normals of the radial graph rho(u) from one-ring gradient fits.

    Same construction as the NumPy backend: per vertex, a least-squares fit of
    rho over the ring in log-map coordinates of the parameter sphere gives the
    profile gradient, which tilts the radial direction within the frame
    spanned by the embedded tangent vectors.
    """
    cdef Py_ssize_t n = dirs.shape[0]
    cdef Py_ssize_t maxv = neighbors.shape[1]
    cdef Py_ssize_t dim = 3 if curv == 0 else 4
    out = np.empty((n, dim))
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t i, k, j, ax
    cdef int nb
    cdef double ux, uy, uz, av, best
    cdef double w1x, w1y, w1z, w2x, w2y, w2z, wn
    cdef double dx, dy, dz, cosd, tx, ty, tz, tn, theta, scale, xx, yy, rv
    cdef double s1, sx, sy, sxx, sxy, syy, r0, rx, ry
    cdef double det, d1, d2, g1, g2
    cdef double cr, sr, snk, norm2
    cdef double nu[4]
    cdef bint singular = 0, degenerate = 0
    with nogil:
        for i in range(n):
            ux = dirs[i, 0]
            uy = dirs[i, 1]
            uz = dirs[i, 2]
            # deterministic tangent frame: axis with the smallest |component| of u
            ax = 0
            best = fabs(ux)
            av = fabs(uy)
            if av < best:
                best = av
                ax = 1
            av = fabs(uz)
            if av < best:
                ax = 2
            if ax == 0:
                w1x = 0.0
                w1y = uz
                w1z = -uy
            elif ax == 1:
                w1x = -uz
                w1y = 0.0
                w1z = ux
            else:
                w1x = uy
                w1y = -ux
                w1z = 0.0
            wn = sqrt(w1x * w1x + w1y * w1y + w1z * w1z)
            w1x /= wn
            w1y /= wn
            w1z /= wn
            w2x = uy * w1z - uz * w1y
            w2y = uz * w1x - ux * w1z
            w2z = ux * w1y - uy * w1x

            # center vertex contributes the row [1, 0, 0] -> rho_i
            s1 = 1.0
            sx = 0.0
            sy = 0.0
            sxx = 0.0
            sxy = 0.0
            syy = 0.0
            r0 = radii[i]
            rx = 0.0
            ry = 0.0
            for k in range(maxv):
                nb = neighbors[i, k]
                if nb < 0:
                    continue
                dx = dirs[nb, 0]
                dy = dirs[nb, 1]
                dz = dirs[nb, 2]
                cosd = dx * ux + dy * uy + dz * uz
                if cosd > 1.0:
                    cosd = 1.0
                elif cosd < -1.0:
                    cosd = -1.0
                tx = dx - cosd * ux
                ty = dy - cosd * uy
                tz = dz - cosd * uz
                tn = sqrt(tx * tx + ty * ty + tz * tz)
                theta = atan2(tn, cosd)
                scale = theta / tn if tn > 0.0 else 0.0
                xx = scale * (tx * w1x + ty * w1y + tz * w1z)
                yy = scale * (tx * w2x + ty * w2y + tz * w2z)
                rv = radii[nb]
                s1 += 1.0
                sx += xx
                sy += yy
                sxx += xx * xx
                sxy += xx * yy
                syy += yy * yy
                r0 += rv
                rx += xx * rv
                ry += yy * rv

            # Cramer's rule on the symmetric 3x3 normal equations
            det = (s1 * (sxx * syy - sxy * sxy)
                   - sx * (sx * syy - sxy * sy)
                   + sy * (sx * sxy - sxx * sy))
            if det == 0.0:
                singular = 1
                break
            d1 = (r0 * (sxy * sy - sx * syy)
                  + s1 * (rx * syy - ry * sxy)
                  + (ry * sx - rx * sy) * sy)
            d2 = (r0 * (sx * sxy - sxx * sy)
                  + s1 * (ry * sxx - rx * sxy)
                  + (rx * sy - ry * sx) * sx)
            g1 = d1 / det
            g2 = d2 / det

            if curv == 0:
                snk = radii[i]
                nu[0] = ux - (g1 / snk) * w1x - (g2 / snk) * w2x
                nu[1] = uy - (g1 / snk) * w1y - (g2 / snk) * w2y
                nu[2] = uz - (g1 / snk) * w1z - (g2 / snk) * w2z
            else:
                if curv == 1:
                    cr = cos(radii[i])
                    sr = sin(radii[i])
                    nu[0] = -sr
                else:
                    cr = cosh(radii[i])
                    sr = sinh(radii[i])
                    nu[0] = sr
                snk = sr
                nu[1] = cr * ux - (g1 / snk) * w1x - (g2 / snk) * w2x
                nu[2] = cr * uy - (g1 / snk) * w1y - (g2 / snk) * w2y
                nu[3] = cr * uz - (g1 / snk) * w1z - (g2 / snk) * w2z
            norm2 = _inner_row(curv, nu, nu, dim)
            if norm2 <= 0.0:
                degenerate = 1
                break
            norm2 = sqrt(norm2)
            for j in range(dim):
                ov[i, j] = nu[j] / norm2
    if singular:
        raise MeshIntegrityError("degenerate one-ring: normal gradient fit is singular")
    if degenerate:
        raise MeshIntegrityError("degenerate normal (nonpositive norm)")
    return out
