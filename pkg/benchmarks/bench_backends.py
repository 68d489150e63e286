"""Time the compiled kernels against the NumPy fallback on realistic meshes.

Run:  python3 benchmarks/bench_backends.py [--level 6] [--repeats 5]

The timed functions are the ones the flow engine actually leans on; the mesh
is a perturbed radial graph so no branch gets an artificially easy path.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from minkflow._backend import kernels_np

try:
    from minkflow._backend import _kernels
except ImportError:
    _kernels = None

from minkflow.icosphere import icosphere, vertex_neighbors
from minkflow.spaces import Space
from minkflow.surface import RadialGraphSpec, build_radial_graph


def _best_of(fn, repeats: int) -> float:
    fn()  # warm up
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--level", type=int, default=6)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    dirs, faces = icosphere(args.level)
    nbrs = vertex_neighbors(args.level)
    spec = RadialGraphSpec(Space.HYPERBOLIC, 1.0, (0, 0, 0, 0, 0.03, 0, 0.01, 0, 0.02))
    mesh = build_radial_graph(spec, args.level)
    curv = -1

    cases = [
        ("flow_area", lambda m: m.flow_area(curv, mesh.coords, mesh.normals, mesh.faces, 0.2)),
        ("tri_area_sum", lambda m: m.tri_area_sum(curv, mesh.coords, mesh.faces)),
        ("exp_flow", lambda m: m.exp_flow(curv, mesh.coords, mesh.normals, 0.2)),
        ("volume_quad", lambda m: m.volume_quad(curv, mesh.weights, mesh.radii)),
        ("solid_angle_thirds", lambda m: m.triangle_solid_angle_thirds(dirs, faces)),
        ("profile_normals", lambda m: m.profile_gradient_normals(curv, dirs, mesh.radii, nbrs)),
    ]

    print(f"level {args.level}: {dirs.shape[0]} vertices, {faces.shape[0]} faces")
    print(f"{'kernel':22s} {'numpy':>12s} {'compiled':>12s} {'speedup':>9s}")
    for name, call in cases:
        t_np = _best_of(lambda: call(kernels_np), args.repeats)
        if _kernels is None:
            print(f"{name:22s} {t_np * 1e3:10.3f} ms {'(not built)':>12s}")
            continue
        t_cy = _best_of(lambda: call(_kernels), args.repeats)
        print(f"{name:22s} {t_np * 1e3:10.3f} ms {t_cy * 1e3:10.3f} ms {t_np / t_cy:8.1f}x")


if __name__ == "__main__":
    main()
