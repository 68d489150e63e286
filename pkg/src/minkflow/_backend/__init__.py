"""Kernel backend selection.

The compiled Cython kernels are preferred when importable; the NumPy
implementation is the fallback.  MINKFLOW_BACKEND forces the choice:

    MINKFLOW_BACKEND=python     always use the NumPy kernels
    MINKFLOW_BACKEND=compiled   require the compiled kernels (ImportError if absent)
    MINKFLOW_BACKEND=auto       the default behaviour

Both backends expose the same six functions with identical semantics:
exp_flow, tri_area_sum, flow_area, volume_quad, triangle_solid_angle_thirds,
profile_gradient_normals.
"""

import os

from . import kernels_np

_choice = os.environ.get("MINKFLOW_BACKEND", "auto").strip().lower()

if _choice == "python":
    _impl = kernels_np
elif _choice in ("auto", "", "compiled"):
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "compiled":
            raise ImportError(
                "MINKFLOW_BACKEND=compiled but the compiled kernels are not built"
            ) from None
        _impl = kernels_np
else:
    raise ValueError(f"unknown MINKFLOW_BACKEND value {_choice!r}")

exp_flow = _impl.exp_flow
tri_area_sum = _impl.tri_area_sum
flow_area = _impl.flow_area
volume_quad = _impl.volume_quad
triangle_solid_angle_thirds = _impl.triangle_solid_angle_thirds
profile_gradient_normals = _impl.profile_gradient_normals


def backend_name() -> str:
    """Which kernel implementation is active: 'compiled' or 'python'."""
    return _impl.KIND
