"""Compiled kernels must agree with the pure-python reference bit-for-bit-ish.

Every kernel is evaluated by both backends on the same perturbed meshes in
all three spaces.  Agreement is required to near machine precision; the only
relaxation is for the fitted normals, where the two linear solvers (Cramer
vs LAPACK) round differently in the last few bits.
"""

import math

import numpy as np
import pytest

from minkflow import _backend
from minkflow._backend import kernels_np
from minkflow.errors import MeshIntegrityError
from minkflow.spaces import Space, constraint_residual
from minkflow.surface import RadialGraphSpec, build_radial_graph

compiled = pytest.importorskip(
    "minkflow._backend._kernels", reason="compiled backend not built"
)

BUMPY = (0.0, 0.02, -0.01, 0.03, -0.02, 0.01, 0.02, -0.01, 0.01)
ALL_SPACES = [Space.EUCLIDEAN, Space.HYPERBOLIC, Space.SPHERICAL]


def _mesh(space):
    base = 0.6 if space is Space.SPHERICAL else 1.0
    return build_radial_graph(RadialGraphSpec(space, base, BUMPY), 4)


def test_backend_kinds():
    assert kernels_np.KIND == "python"
    assert compiled.KIND == "compiled"
    assert _backend.backend_name() in ("python", "compiled")


@pytest.mark.parametrize("space", ALL_SPACES)
def test_exp_flow_agrees_and_stays_on_the_model(space):
    mesh = _mesh(space)
    k = space.curvature
    a = kernels_np.exp_flow(k, mesh.coords, mesh.normals, 0.37)
    b = compiled.exp_flow(k, mesh.coords, mesh.normals, 0.37)
    np.testing.assert_allclose(b, a, rtol=1e-14, atol=1e-14)
    assert np.max(np.abs(constraint_residual(space, b))) < 1e-9


@pytest.mark.parametrize("space", ALL_SPACES)
def test_tri_area_sum_agrees(space):
    mesh = _mesh(space)
    k = space.curvature
    a = kernels_np.tri_area_sum(k, mesh.coords, mesh.faces)
    b = compiled.tri_area_sum(k, mesh.coords, mesh.faces)
    assert b == pytest.approx(a, rel=1e-13)


@pytest.mark.parametrize("space", ALL_SPACES)
def test_flow_area_agrees(space):
    mesh = _mesh(space)
    k = space.curvature
    for t in (0.0, 0.2, 0.8):
        a = kernels_np.flow_area(k, mesh.coords, mesh.normals, mesh.faces, t)
        b = compiled.flow_area(k, mesh.coords, mesh.normals, mesh.faces, t)
        assert b == pytest.approx(a, rel=1e-13)


@pytest.mark.parametrize("space", ALL_SPACES)
def test_volume_quad_agrees_with_reference_and_fsum(space):
    mesh = _mesh(space)
    k = space.curvature
    a = kernels_np.volume_quad(k, mesh.weights, mesh.radii)
    b = compiled.volume_quad(k, mesh.weights, mesh.radii)
    assert b == pytest.approx(a, rel=1e-14)
    if space is Space.EUCLIDEAN:
        exact = math.fsum(w * r**3 / 3.0 for w, r in zip(mesh.weights, mesh.radii))
        assert b == pytest.approx(exact, rel=1e-13)


def test_solid_angle_thirds_agree():
    mesh = _mesh(Space.EUCLIDEAN)
    a = kernels_np.triangle_solid_angle_thirds(mesh.directions, mesh.faces)
    b = compiled.triangle_solid_angle_thirds(mesh.directions, mesh.faces)
    np.testing.assert_allclose(b, a, rtol=1e-12, atol=1e-15)


@pytest.mark.parametrize("space", ALL_SPACES)
def test_profile_gradient_normals_agree(space):
    mesh = _mesh(space)
    k = space.curvature
    nb = np.asarray(mesh.neighbors)
    a = kernels_np.profile_gradient_normals(k, mesh.directions, mesh.radii, nb)
    b = compiled.profile_gradient_normals(k, mesh.directions, mesh.radii, nb)
    # unit vectors, so atol is the meaningful knob; Cramer vs LU solver
    # rounding shows up around 1e-14 on near-zero components
    np.testing.assert_allclose(b, a, rtol=1e-12, atol=1e-13)


@pytest.mark.parametrize("kernels", [kernels_np, compiled], ids=["python", "compiled"])
def test_flipped_face_raises_in_both(kernels):
    mesh = _mesh(Space.EUCLIDEAN)
    faces = np.array(mesh.faces, dtype=np.int32, copy=True)
    faces[0, [0, 1]] = faces[0, [1, 0]]
    with pytest.raises(MeshIntegrityError, match="orientation"):
        kernels.triangle_solid_angle_thirds(mesh.directions, faces)


@pytest.mark.parametrize("kernels", [kernels_np, compiled], ids=["python", "compiled"])
def test_nonspacelike_span_raises_in_both(kernels):
    # hand-built hyperboloid points with one vertex pushed far up the time
    # axis: the triangle's Gram matrix goes indefinite
    verts = np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [math.sqrt(2.0), 1.0, 0.0, 0.0],
            [math.cosh(5.0), 0.0, math.sinh(5.0), 0.0],
        ],
        dtype=np.float64,
    )
    faces = np.array([[0, 1, 2]], dtype=np.int32)
    with pytest.raises(MeshIntegrityError, match="nonspacelike"):
        kernels.tri_area_sum(-1, verts, faces)


def test_environment_override_selects_python(monkeypatch):
    monkeypatch.setenv("MINKFLOW_BACKEND", "python")
    import importlib

    import minkflow._backend as bk

    importlib.reload(bk)
    try:
        assert bk.backend_name() == "python"
        assert bk.tri_area_sum is kernels_np.tri_area_sum
    finally:
        monkeypatch.delenv("MINKFLOW_BACKEND")
        importlib.reload(bk)
