"""Command line front end.

Subcommands:
  verify          check one surface document: convexity, then the deficit
                  reports for its space, at a tolerance calibrated against a
                  same-subdivision discrete sphere
  flow            evolve a surface and compare against the closed forms
  counterexample  scan geodesic-disk limits for the false strengthened bound
  sphere-table    closed-form sphere rows for all three spaces
  sweep           batch deficit evaluation over families from a JSON file

Exit codes: 0 success, 1 scan found nothing, 2 inequality violation,
3 convexity failure, 64 usage error.

Every data file (CSV, JSON report, SVG) is deterministic for a given input;
the wall-clock timestamp goes to run_metadata.json and nowhere else.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import __version__
from ._backend import backend_name
from .closed_form import (
    FlowSeries,
    hyperbolic_asymptotic_deficit,
    hyperbolic_isoperimetric_gap,
    series_for,
    sphere_geometry,
)
from .errors import InequalityViolationError, MinkflowError
from .flow import compare_series, flow_series, ode_residual, validity_window
from .inequalities import (
    DEFAULT_TOL,
    counterexample_scan,
    false_inequality_eval,
    geodesic_disk_limits,
    minkowski_deficit_euclidean,
    minkowski_deficit_hyperbolic,
    minkowski_deficit_spherical,
    spherical_rigidity_indicator,
    weaker_inequalities_hyperbolic,
)
from .spaces import Space
from .summary import GeometricSummary
from .surface import (
    DEFAULT_SUBDIVISION,
    RadialGraphSpec,
    build_radial_graph,
    convexity_report,
    parse_surface_document,
    summarize,
)
from .svgplot import PALETTE, ChartSeries, line_chart, panel_row, write_svg

__all__ = ["RunConfig", "main"]

MIN_SUBDIVISION, MAX_SUBDIVISION = 2, 8

EXIT_OK = 0
EXIT_NO_FINDING = 1
EXIT_VIOLATION = 2
EXIT_NONCONVEX = 3
EXIT_USAGE = 64

_SPHERE_TABLE_RADII = {
    Space.EUCLIDEAN: (0.5, 1.0, 2.0),
    Space.HYPERBOLIC: (0.25, 0.5, 1.0, 2.0),
    Space.SPHERICAL: (math.pi / 12, math.pi / 6, math.pi / 4, math.pi / 3),
}


@dataclass(frozen=True)
class RunConfig:
    """Resolved arguments for one subcommand invocation."""

    command: str
    output_dir: str
    input_path: Optional[str] = None
    subdivision: Optional[int] = None
    grid: Optional[tuple[float, float, int]] = None
    tolerance: Optional[float] = None
    r_min: float = 0.1
    r_max: float = 5.0
    step: float = 0.05
    family_path: Optional[str] = None


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; 2 is taken, usage errors are 64
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _grid_spec(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not (start < stop) or count < 3:
        raise argparse.ArgumentTypeError("grid needs start < stop and count >= 3")
    return start, stop, count


def _build_parser() -> _Parser:
    parser = _Parser(prog="minkflow", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"minkflow {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="check one surface document")
    p.add_argument("--input", required=True, help="surface document (JSON)")
    p.add_argument("--subdivision", type=int, default=None,
                   help=f"mesh refinement level, {MIN_SUBDIVISION}..{MAX_SUBDIVISION} (overrides the document)")
    p.add_argument("--tol", type=float, default=None, help="override the calibrated tolerance")
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("flow", help="evolve a surface, compare to closed forms")
    p.add_argument("--input", required=True)
    p.add_argument("--subdivision", type=int, default=None)
    p.add_argument("--grid", type=_grid_spec, default=None, metavar="START:STOP:COUNT",
                   help="time grid (default 0:2:9, shortened inside the spherical window)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("counterexample", help="scan disk limits for the false bound")
    p.add_argument("--rmin", type=float, default=0.1)
    p.add_argument("--rmax", type=float, default=5.0)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--out", required=True)

    p = sub.add_parser("sphere-table", help="closed-form sphere rows, all spaces")
    p.add_argument("--out", required=True)

    p = sub.add_parser("sweep", help="batch deficits over families from JSON")
    p.add_argument("--family", required=True, help="family description file (JSON)")
    p.add_argument("--out", required=True)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        output_dir=args.out,
        input_path=getattr(args, "input", None),
        subdivision=getattr(args, "subdivision", None),
        grid=getattr(args, "grid", None),
        tolerance=getattr(args, "tol", None),
        r_min=getattr(args, "rmin", 0.1),
        r_max=getattr(args, "rmax", 5.0),
        step=getattr(args, "step", 0.05),
        family_path=getattr(args, "family", None),
    )


def _usage_fail(message: str) -> int:
    print(f"minkflow: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_metadata(config: RunConfig) -> None:
    payload = {
        "command": config.command,
        "config": {k: v for k, v in vars(config).items() if v is not None},
        "version": __version__,
        "backend": backend_name(),
        "timestamp_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    _write_json(os.path.join(config.output_dir, "run_metadata.json"), payload)


def _load_surface(config: RunConfig) -> tuple[RadialGraphSpec, int]:
    with open(config.input_path) as fh:
        doc = json.load(fh)
    spec, doc_subdivision = parse_surface_document(doc)
    subdivision = config.subdivision if config.subdivision is not None else doc_subdivision
    if not MIN_SUBDIVISION <= subdivision <= MAX_SUBDIVISION:
        raise ValueError(
            f"subdivision {subdivision} outside [{MIN_SUBDIVISION}, {MAX_SUBDIVISION}]")
    return spec, subdivision


def _deficit_reports(space: Space, summary: GeometricSummary, tol: float):
    """(asserted, informational) report lists for one summary."""
    if space is Space.EUCLIDEAN:
        return [minkowski_deficit_euclidean(summary, tol=tol)], []
    if space is Space.HYPERBOLIC:
        weaker = weaker_inequalities_hyperbolic(summary, tol=tol)
        # the euclidean-form bound is conjectural here, report it but never assert it
        return [minkowski_deficit_hyperbolic(summary, tol=tol), *weaker[:2]], [weaker[2]]
    return [minkowski_deficit_spherical(summary, tol=tol)], []


# ---------------------------------------------------------------- verify


def _calibrated_tolerance(spec: RadialGraphSpec, subdivision: int) -> tuple[float, float]:
    """Tolerance from the same-subdivision discrete sphere's own deficit.

    The discretization error of the pipeline shows up as a nonzero deficit
    even for the round sphere, where the true deficit is exactly zero.  Ten
    times that magnitude separates discretization noise from real violations.
    """
    sphere = RadialGraphSpec(spec.space, spec.base_radius, (0.0,) * 9)
    mesh = build_radial_graph(sphere, subdivision)
    summary = summarize(mesh)
    asserted, _ = _deficit_reports(spec.space, summary, tol=math.inf)
    sphere_deficit = asserted[0].deficit
    return max(DEFAULT_TOL, 10.0 * abs(sphere_deficit)), sphere_deficit


def cmd_verify(config: RunConfig) -> int:
    spec, subdivision = _load_surface(config)
    mesh = build_radial_graph(spec, subdivision)
    convexity = convexity_report(mesh)
    summary = summarize(mesh)

    if config.tolerance is not None:
        tol, sphere_deficit = config.tolerance, None
    else:
        tol, sphere_deficit = _calibrated_tolerance(spec, subdivision)
    asserted, informational = _deficit_reports(spec.space, summary, tol)

    if not convexity.convex:
        code = EXIT_NONCONVEX
    elif any(not r.holds for r in asserted):
        code = EXIT_VIOLATION
    else:
        code = EXIT_OK

    payload = {
        "surface": spec.to_dict(),
        "subdivision": subdivision,
        "summary": summary.as_dict(),
        # amplitude of the spherical area oscillation; 1 - R signs the deficit
        "rigidity_indicator": (spherical_rigidity_indicator(summary)
                               if spec.space is Space.SPHERICAL else None),
        "convexity": {
            "convex": convexity.convex,
            "min_shape_eigenvalue": convexity.min_shape_eigenvalue,
            "worst_vertex": convexity.worst_vertex,
            "tolerance": convexity.tolerance,
        },
        "tolerance": tol,
        "calibration_sphere_deficit": sphere_deficit,
        "asserted": [r.to_dict() for r in asserted],
        "informational": [r.to_dict() for r in informational],
        "exit_code": code,
    }
    _write_json(os.path.join(config.output_dir, "verify_report.json"), payload)
    _write_metadata(config)

    for r in asserted:
        print(f"{r.name}: deficit={r.deficit:.6g} holds={r.holds}")
    if not convexity.convex:
        print(f"convexity FAILED at vertex {convexity.worst_vertex} "
              f"(min eigenvalue {convexity.min_shape_eigenvalue:.6g}); "
              "inequality reports are informational only")
    return code


# ---------------------------------------------------------------- flow


def _resolve_grid(config: RunConfig, space: Space) -> np.ndarray:
    window = validity_window(space)
    if config.grid is None:
        stop = 2.0 if math.isinf(window.t_max) else 0.9 * window.t_max
        return np.linspace(0.0, stop, 9)
    start, stop, count = config.grid
    if start not in window or not (stop < window.t_max or math.isinf(window.t_max)):
        raise ValueError(f"grid [{start}, {stop}] leaves the validity window "
                         f"[{window.t_min}, {window.t_max})")
    return np.linspace(start, stop, count)


def _residual_csv(path: str, discrete: FlowSeries, analytic: FlowSeries, space: Space) -> None:
    t = np.asarray(discrete.t_values)
    rows = zip(t[1:-1], ode_residual(discrete, space), ode_residual(analytic, space))
    with open(path, "w") as fh:
        fh.write("t,residual_discrete,residual_analytic\n")
        for ti, rd, ra in rows:
            fh.write(f"{ti:.17g},{rd:.17g},{ra:.17g}\n")


def _gap_csv(path: str, summary: GeometricSummary, t_grid: np.ndarray) -> None:
    series = series_for(Space.HYPERBOLIC, summary)
    deficit = hyperbolic_asymptotic_deficit(summary)
    with open(path, "w") as fh:
        fh.write("t,isoperimetric_gap,asymptotic_deficit\n")
        for t in t_grid:
            gap = hyperbolic_isoperimetric_gap(series, float(t))
            fh.write(f"{t:.17g},{gap:.17g},{deficit:.17g}\n")


def _flow_svg(path: str, discrete: FlowSeries, analytic: FlowSeries) -> None:
    t = list(discrete.t_values)
    panels = []
    for title, attr in (("area A(t)", "areas"), ("enclosed volume V(t)", "volumes")):
        panels.append(line_chart(
            title,
            [ChartSeries("closed form", t, list(getattr(analytic, attr)), PALETTE[0]),
             ChartSeries("discrete flow", t, list(getattr(discrete, attr)), PALETTE[1], dashed=True)],
            x_label="t",
        ))
    write_svg(path, panel_row(panels))


def cmd_flow(config: RunConfig) -> int:
    spec, subdivision = _load_surface(config)
    mesh = build_radial_graph(spec, subdivision)
    t_grid = _resolve_grid(config, spec.space)
    summary = summarize(mesh)

    discrete = flow_series(mesh, t_grid)
    analytic = series_for(spec.space, summary).sample(t_grid)
    comparison = compare_series(discrete, analytic)

    out = config.output_dir
    discrete.to_csv(os.path.join(out, "flow_discrete.csv"))
    analytic.to_csv(os.path.join(out, "flow_analytic.csv"))
    _residual_csv(os.path.join(out, "ode_residual.csv"), discrete, analytic, spec.space)
    if spec.space is Space.HYPERBOLIC:
        _gap_csv(os.path.join(out, "isoperimetric_gap.csv"), summary, t_grid)
    _write_json(os.path.join(out, "compare_report.json"), {
        "surface": spec.to_dict(),
        "subdivision": subdivision,
        **comparison.to_dict(),
    })
    _flow_svg(os.path.join(out, "flow.svg"), discrete, analytic)
    _write_metadata(config)

    print(f"max relative error: area {comparison.max_rel_area_err:.3e}, "
          f"volume {comparison.max_rel_vol_err:.3e} over {comparison.grid_points} points")
    return EXIT_OK


# ---------------------------------------------------------------- counterexample


def cmd_counterexample(config: RunConfig) -> int:
    if not (0.0 < config.r_min < config.r_max) or config.step <= 0.0:
        raise ValueError("need 0 < rmin < rmax and step > 0")
    scan = counterexample_scan(config.r_min, config.r_max, config.step)

    radii, false_vals, true_vals = [], [], []
    rows = []
    for i in range(scan.grid_points):
        r = config.r_min + i * config.step
        summary = geodesic_disk_limits(r)
        false_rep = false_inequality_eval(summary)
        true_rep = minkowski_deficit_hyperbolic(summary)
        weaker = weaker_inequalities_hyperbolic(summary)
        rows.append((r, false_rep.deficit, true_rep.deficit,
                     weaker[0].deficit, weaker[1].deficit))
        radii.append(r)
        false_vals.append(false_rep.deficit)
        true_vals.append(true_rep.deficit)

    out = config.output_dir
    with open(os.path.join(out, "counterexample_grid.csv"), "w") as fh:
        fh.write("R,false_strengthening_deficit,hyperbolic_deficit,"
                 "weak_volume_deficit,weak_square_deficit\n")
        for row in rows:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
    _write_json(os.path.join(out, "counterexample_report.json"), {
        "r_min": config.r_min,
        "r_max": config.r_max,
        "step": config.step,
        "first_violation_radius": scan.first_violation_radius,
        "bisected_threshold": scan.bisected_threshold,
        "grid_size": scan.grid_points,
    })
    series = [ChartSeries("false strengthened bound", radii, false_vals, PALETTE[1]),
              ChartSeries("hyperbolic bound (holds)", radii, true_vals, PALETTE[0])]
    write_svg(os.path.join(out, "counterexample.svg"),
              panel_row([line_chart("deficit of geodesic-disk limits", series,
                                    x_label="disk radius R", y_label="deficit")]))
    _write_metadata(config)

    if scan.first_violation_radius is None:
        print(f"no violation in [{config.r_min}, {config.r_max}]")
        return EXIT_NO_FINDING
    print(f"first grid violation at R={scan.first_violation_radius:.6g}, "
          f"sign change at R={scan.bisected_threshold:.12g}")
    return EXIT_OK


# ---------------------------------------------------------------- sphere-table


def cmd_sphere_table(config: RunConfig) -> int:
    deficit_fn = {
        Space.EUCLIDEAN: minkowski_deficit_euclidean,
        Space.HYPERBOLIC: minkowski_deficit_hyperbolic,
        Space.SPHERICAL: minkowski_deficit_spherical,
    }
    worst = 0.0
    with open(os.path.join(config.output_dir, "sphere_table.csv"), "w") as fh:
        fh.write("space,r,area,area_rate,volume,deficit\n")
        for space, radii in _SPHERE_TABLE_RADII.items():
            for r in radii:
                summary = sphere_geometry(space, r)
                deficit = deficit_fn[space](summary).deficit
                worst = max(worst, abs(deficit))
                fh.write(f"{space.json_name},{r:.17g},{summary.area:.17g},"
                         f"{summary.total_mean_curvature:.17g},"
                         f"{summary.volume:.17g},{deficit:.17g}\n")
    _write_metadata(config)
    print(f"largest |deficit| over sphere rows: {worst:.3e}")
    return EXIT_OK if worst <= DEFAULT_TOL else EXIT_VIOLATION


# ---------------------------------------------------------------- sweep


def _sweep_member_summaries(family: dict) -> list[tuple[str, GeometricSummary]]:
    kind = family["kind"]
    if kind == "sphere":
        return [(json.dumps({"r": r}, sort_keys=True),
                 sphere_geometry(Space.HYPERBOLIC, float(r)))
                for r in family["radii"]]
    if kind == "disk_limit":
        return [(json.dumps({"R": r}, sort_keys=True), geodesic_disk_limits(float(r)))
                for r in family["radii"]]
    if kind == "radial_graph":
        base = float(family["base_radius"])
        subdivision = int(family.get("subdivision", DEFAULT_SUBDIVISION))
        if not MIN_SUBDIVISION <= subdivision <= MAX_SUBDIVISION:
            raise ValueError(f"subdivision {subdivision} outside "
                             f"[{MIN_SUBDIVISION}, {MAX_SUBDIVISION}]")

        def one(coeffs: Sequence[float]) -> GeometricSummary:
            spec = RadialGraphSpec(Space.HYPERBOLIC, base, tuple(float(c) for c in coeffs))
            return summarize(build_radial_graph(spec, subdivision))

        rows = family["coefficients"]
        max_workers = _worker_cap()
        # submission order in, submission order out: determinism
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            summaries = list(pool.map(one, rows))
        return [(json.dumps({"coefficients": list(map(float, c))}), s)
                for c, s in zip(rows, summaries)]
    raise ValueError(f"unknown family kind {kind!r}")


def _worker_cap() -> int:
    env = os.environ.get("MINKFLOW_THREADS")
    cap = os.cpu_count() or 1
    if env is not None:
        try:
            cap = max(1, min(cap, int(env)))
        except ValueError:
            raise ValueError(f"MINKFLOW_THREADS={env!r} is not an integer") from None
    return cap


def cmd_sweep(config: RunConfig) -> int:
    with open(config.family_path) as fh:
        doc = json.load(fh)
    families = doc["families"] if isinstance(doc, dict) else doc
    if not isinstance(families, list) or not families:
        raise ValueError("family file needs a nonempty 'families' list")

    import csv as _csv

    minima: dict[str, float] = {}
    with open(os.path.join(config.output_dir, "sweep.csv"), "w", newline="") as fh:
        writer = _csv.writer(fh)
        writer.writerow(["family_id", "params", "deficit_thm1", "deficit_euclidean_form"])
        for family in families:
            fid = family["family_id"]
            for params, summary in _sweep_member_summaries(family):
                true_deficit = minkowski_deficit_hyperbolic(summary).deficit
                open_form = weaker_inequalities_hyperbolic(summary)[2].deficit
                minima[fid] = min(minima.get(fid, math.inf), true_deficit)
                writer.writerow([fid, params, f"{true_deficit:.17g}", f"{open_form:.17g}"])
    _write_json(os.path.join(config.output_dir, "sweep_summary.json"), {
        "families": {fid: {"min_deficit_thm1": v} for fid, v in minima.items()},
        "min_deficit_thm1": min(minima.values()),
    })
    _write_metadata(config)
    for fid, v in minima.items():
        print(f"{fid}: min deficit {v:.6g}")
    return EXIT_OK


# ---------------------------------------------------------------- entry point


_COMMANDS = {
    "verify": cmd_verify,
    "flow": cmd_flow,
    "counterexample": cmd_counterexample,
    "sphere-table": cmd_sphere_table,
    "sweep": cmd_sweep,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = _config_from_args(args)
    try:
        os.makedirs(config.output_dir, exist_ok=True)
        return _COMMANDS[config.command](config)
    except InequalityViolationError as exc:
        print(f"minkflow: inequality violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError,
            MinkflowError) as exc:
        return _usage_fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
