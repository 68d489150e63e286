"""Normal flow of parallel surfaces in the three constant-curvature spaces.

Evolve a closed convex surface along its unit normal in hyperbolic,
Euclidean, or spherical 3-space, track area and enclosed volume through
closed forms and through a discrete mesh pipeline, and evaluate the
quadratic mean-curvature inequalities those quantities satisfy.
"""

__version__ = "0.1.0"

from ._backend import backend_name
from .closed_form import (
    EuclideanSeries,
    FlowSeries,
    HyperbolicSeries,
    SeriesCoefficients,
    SphericalSeries,
    equal_area_radius,
    equal_area_radius_rate,
    euclidean_series,
    hyperbolic_asymptotic_deficit,
    hyperbolic_isoperimetric_gap,
    hyperbolic_series,
    isoperimetric_deficit_polynomial,
    isoperimetric_deficit_polynomial_exact,
    rebase_series,
    series_for,
    sphere_geometry,
    spherical_series,
)
from .errors import (
    DegenerateCaseError,
    GeometryDomainError,
    InequalityViolationError,
    MeshIntegrityError,
    MinkflowError,
    SurfaceDefinitionError,
)
from .exact import PI, PiPoly, to_fraction
from .flow import (
    ComparisonReport,
    ValidityWindow,
    compare_analytic,
    compare_series,
    default_comparison_grid,
    flow_series,
    flow_surface,
    ode_residual,
    validity_window,
)
from .icosphere import icosphere, solid_angle_weights, subdivide, vertex_neighbors
from .inequalities import (
    DeficitReport,
    ScanResult,
    SmallSurfaceReduction,
    counterexample_scan,
    false_inequality_eval,
    geodesic_disk_limits,
    minkowski_deficit_euclidean,
    minkowski_deficit_hyperbolic,
    minkowski_deficit_spherical,
    small_surface_reduction,
    spherical_rigidity_indicator,
    weaker_inequalities_hyperbolic,
)
from .spaces import Point, Space, TangentVector, exp_map, geodesic_distance
from .summary import GeometricSummary
from .surface import (
    ConvexityReport,
    RadialGraphSpec,
    SurfaceMesh,
    build_radial_graph,
    convexity_report,
    enclosed_volume,
    parse_surface_document,
    summarize,
    surface_area,
    total_mean_curvature,
)

__all__ = [
    "__version__",
    "backend_name",
    # spaces
    "Space", "Point", "TangentVector", "exp_map", "geodesic_distance",
    # surface pipeline
    "RadialGraphSpec", "SurfaceMesh", "ConvexityReport", "GeometricSummary",
    "build_radial_graph", "parse_surface_document", "surface_area",
    "enclosed_volume", "total_mean_curvature", "summarize", "convexity_report",
    "icosphere", "subdivide", "vertex_neighbors", "solid_angle_weights",
    # closed forms
    "FlowSeries", "SeriesCoefficients", "EuclideanSeries", "HyperbolicSeries",
    "SphericalSeries", "series_for", "euclidean_series", "hyperbolic_series",
    "spherical_series", "sphere_geometry", "equal_area_radius",
    "equal_area_radius_rate", "hyperbolic_asymptotic_deficit",
    "hyperbolic_isoperimetric_gap", "isoperimetric_deficit_polynomial",
    "isoperimetric_deficit_polynomial_exact", "rebase_series",
    # exact arithmetic
    "PiPoly", "PI", "to_fraction",
    # inequalities
    "DeficitReport", "ScanResult", "SmallSurfaceReduction",
    "minkowski_deficit_euclidean", "minkowski_deficit_hyperbolic",
    "minkowski_deficit_spherical", "spherical_rigidity_indicator",
    "weaker_inequalities_hyperbolic", "false_inequality_eval",
    "geodesic_disk_limits", "counterexample_scan", "small_surface_reduction",
    # flow engine
    "ValidityWindow", "validity_window", "flow_surface", "flow_series",
    "ode_residual", "ComparisonReport", "compare_series", "compare_analytic",
    "default_comparison_grid",
    # errors
    "MinkflowError", "SurfaceDefinitionError", "MeshIntegrityError",
    "GeometryDomainError", "DegenerateCaseError", "InequalityViolationError",
]
