"""Subdivided icosahedron meshes and their quadrature weights."""

import math

import numpy as np
import pytest

from minkflow.icosphere import (
    edge_count,
    icosphere,
    solid_angle_weights,
    subdivide,
    vertex_neighbors,
)


@pytest.mark.parametrize("level", [0, 1, 2, 3, 4])
def test_counts_and_euler_characteristic(level):
    dirs, faces = icosphere(level)
    assert dirs.shape == (10 * 4**level + 2, 3)
    assert faces.shape == (20 * 4**level, 3)
    chi = dirs.shape[0] - edge_count(faces) + faces.shape[0]
    assert chi == 2


@pytest.mark.parametrize("level", [0, 2, 4])
def test_vertices_unit_norm(level):
    dirs, _ = icosphere(level)
    assert np.allclose(np.linalg.norm(dirs, axis=1), 1.0, atol=1e-15)


def test_subdivide_splits_each_face_in_four():
    dirs, faces = icosphere(1)
    d2, f2 = subdivide(dirs, faces)
    assert f2.shape[0] == 4 * faces.shape[0]
    assert d2.shape[0] == dirs.shape[0] + edge_count(faces)  # one new vertex per edge
    assert np.allclose(np.linalg.norm(d2, axis=1), 1.0, atol=1e-15)
    # parents keep their indices
    assert np.array_equal(d2[: dirs.shape[0]], dirs)


def test_meshes_are_cached_and_read_only():
    d1, f1 = icosphere(3)
    d2, f2 = icosphere(3)
    assert d1 is d2 and f1 is f2
    assert not d1.flags.writeable and not f1.flags.writeable
    assert f1.dtype == np.int32
    with pytest.raises(ValueError):
        d1[0, 0] = 99.0


@pytest.mark.parametrize("level", [1, 3])
def test_neighbors_match_faces(level):
    dirs, faces = icosphere(level)
    nbrs = vertex_neighbors(level)
    adj = {i: set() for i in range(dirs.shape[0])}
    for a, b, c in faces:
        adj[a].update((b, c))
        adj[b].update((a, c))
        adj[c].update((a, b))
    for i in range(dirs.shape[0]):
        row = set(int(j) for j in nbrs[i] if j >= 0)
        assert row == adj[i]
    valences = (nbrs >= 0).sum(axis=1)
    assert np.count_nonzero(valences == 5) == 12  # the icosahedron corners persist
    assert np.all((valences == 5) | (valences == 6))


@pytest.mark.parametrize("level", [0, 2, 4])
def test_solid_angle_weights_tile_the_sphere(level):
    dirs, faces = icosphere(level)
    w = solid_angle_weights(dirs, faces)
    assert w.shape == (dirs.shape[0],)
    assert np.all(w > 0.0)
    assert math.fsum(w) == pytest.approx(4.0 * math.pi, abs=1e-12)


def test_solid_angle_weights_reject_flipped_faces():
    from minkflow.errors import MeshIntegrityError

    dirs, faces = icosphere(1)
    bad = faces.copy()
    bad[0] = bad[0, ::-1]
    with pytest.raises(MeshIntegrityError):
        solid_angle_weights(dirs, bad)


def test_chordal_area_second_order_convergence():
    # inscribed-polyhedron area tends to 4*pi like 4^-level
    errs = []
    for level in (2, 3, 4):
        dirs, faces = icosphere(level)
        v = dirs[faces]
        cross = np.cross(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0])
        area = 0.5 * np.linalg.norm(cross, axis=1).sum()
        errs.append(4.0 * math.pi - area)
    assert errs[0] > errs[1] > errs[2] > 0
    for fine, coarse in zip(errs[1:], errs):
        assert coarse / fine == pytest.approx(4.0, rel=0.1)
