"""Subdivided-icosahedron sampling of the parameter sphere S^2.

Subdivision level n yields 10*4^n + 2 vertices and 20*4^n faces, every face
oriented counterclockwise seen from outside.  Midpoint insertion is cached per
undirected edge, so shared edges stay shared and the mesh remains a closed
2-sphere (Euler characteristic 2) at every level.

Per-vertex solid-angle weights take one third of each incident flat-triangle
solid angle (the cone angle subtended at the origin), then rescale the total
to exactly 4*pi.  The flat triangles tile the sphere of directions, so the
weights integrate constants exactly and smooth profiles at order h^2.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from . import _backend

FOUR_PI = 4.0 * math.pi

_T = (1.0 + math.sqrt(5.0)) / 2.0

_ICO_VERTS = np.array(
    [
        (-1.0, _T, 0.0), (1.0, _T, 0.0), (-1.0, -_T, 0.0), (1.0, -_T, 0.0),
        (0.0, -1.0, _T), (0.0, 1.0, _T), (0.0, -1.0, -_T), (0.0, 1.0, -_T),
        (_T, 0.0, -1.0), (_T, 0.0, 1.0), (-_T, 0.0, -1.0), (-_T, 0.0, 1.0),
    ]
)
_ICO_FACES = np.array(
    [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ],
    dtype=np.int32,
)


def icosahedron() -> tuple[np.ndarray, np.ndarray]:
    """Unit icosahedron: 12 vertices on the sphere, 20 outward-oriented faces."""
    verts = _ICO_VERTS / np.linalg.norm(_ICO_VERTS, axis=1)[:, None]
    return verts, _ICO_FACES.copy()


def subdivide(verts: np.ndarray, faces: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One 4-to-1 split: every edge gains its sphere-projected midpoint."""
    verts = list(map(np.asarray, verts))
    midpoint: dict[tuple[int, int], int] = {}

    def mid(i: int, j: int) -> int:
        key = (i, j) if i < j else (j, i)
        k = midpoint.get(key)
        if k is None:
            p = verts[i] + verts[j]
            verts.append(p / np.linalg.norm(p))
            k = len(verts) - 1
            midpoint[key] = k
        return k

    out = np.empty((4 * len(faces), 3), dtype=np.int32)
    for f, (a, b, c) in enumerate(faces):
        ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
        out[4 * f + 0] = (a, ab, ca)
        out[4 * f + 1] = (b, bc, ab)
        out[4 * f + 2] = (c, ca, bc)
        out[4 * f + 3] = (ab, bc, ca)
    return np.array(verts), out


@lru_cache(maxsize=None)
def icosphere(level: int) -> tuple[np.ndarray, np.ndarray]:
    """Unit direction sphere at the given subdivision level (cached, read-only)."""
    if not isinstance(level, int) or level < 0:
        raise ValueError("subdivision level must be a nonnegative integer")
    verts, faces = icosahedron()
    for _ in range(level):
        verts, faces = subdivide(verts, faces)
    verts = np.ascontiguousarray(verts)
    faces = np.ascontiguousarray(faces)
    verts.setflags(write=False)
    faces.setflags(write=False)
    return verts, faces


@lru_cache(maxsize=None)
def vertex_neighbors(level: int) -> np.ndarray:
    """One-ring adjacency as an (N, max_valence) int32 table, -1 padded.

    Rows are sorted ascending; icosphere valences are 5 (the twelve original
    vertices) or 6.
    """
    verts, faces = icosphere(level)
    rings: list[set[int]] = [set() for _ in range(len(verts))]
    for a, b, c in faces:
        rings[a].update((b, c))
        rings[b].update((a, c))
        rings[c].update((a, b))
    width = max(len(r) for r in rings)
    table = np.full((len(verts), width), -1, dtype=np.int32)
    for i, r in enumerate(rings):
        row = sorted(r)
        table[i, : len(row)] = row
    table.setflags(write=False)
    return table


def solid_angle_weights(dirs: np.ndarray, faces: np.ndarray) -> np.ndarray:
    """Per-vertex quadrature weights on the direction sphere, rescaled to 4*pi."""
    w = _backend.triangle_solid_angle_thirds(
        np.ascontiguousarray(dirs), np.ascontiguousarray(faces, dtype=np.int32)
    )
    return w * (FOUR_PI / float(np.sum(w)))


def edge_count(faces: np.ndarray) -> int:
    """Number of undirected edges."""
    e = np.concatenate([faces[:, (0, 1)], faces[:, (1, 2)], faces[:, (2, 0)]])
    e = np.sort(e, axis=1)
    return len(np.unique(e, axis=0))
