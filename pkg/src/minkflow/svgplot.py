"""Tiny hand-rolled SVG line charts: axes, ticks, polylines, legend.

Only what the CLI plots need.  Output is deterministic text (no ids, no
timestamps), so artifacts diff cleanly between runs.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Sequence, Union

__all__ = ["ChartSeries", "line_chart", "panel_row", "write_svg"]

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")

_W, _H = 460, 330
_ML, _MR, _MT, _MB = 62, 14, 34, 46  # margins: left, right, top, bottom


@dataclass(frozen=True)
class ChartSeries:
    label: str
    xs: Sequence[float]
    ys: Sequence[float]
    color: str
    dashed: bool = False


def _bounds(vals: list[float]) -> tuple[float, float]:
    lo, hi = min(vals), max(vals)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("chart values must be finite")
    if hi == lo:
        lo, hi = lo - 1.0, hi + 1.0
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


def line_chart(
    title: str,
    series: Sequence[ChartSeries],
    x_label: str = "",
    y_label: str = "",
) -> str:
    """One fixed-size chart as an <svg> fragment (for embedding in a row)."""
    if not series or not any(len(s.xs) for s in series):
        raise ValueError("nothing to plot")
    xlo, xhi = _bounds([x for s in series for x in s.xs])
    ylo, yhi = _bounds([y for s in series for y in s.ys])

    def px(x: float) -> float:
        return _ML + (x - xlo) / (xhi - xlo) * (_W - _ML - _MR)

    def py(y: float) -> float:
        return _H - _MB - (y - ylo) / (yhi - ylo) * (_H - _MT - _MB)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
           f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="11">']
    out.append(f'<rect width="{_W}" height="{_H}" fill="white"/>')
    out.append(f'<text x="{_W / 2:.1f}" y="18" text-anchor="middle" font-size="13">{title}</text>')
    # axes
    out.append(f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_H - _MB}" stroke="black"/>')
    out.append(f'<line x1="{_ML}" y1="{_H - _MB}" x2="{_W - _MR}" y2="{_H - _MB}" stroke="black"/>')
    for tx in _ticks(xlo, xhi):
        out.append(f'<line x1="{px(tx):.1f}" y1="{_H - _MB}" x2="{px(tx):.1f}" y2="{_H - _MB + 4}" stroke="black"/>')
        out.append(f'<text x="{px(tx):.1f}" y="{_H - _MB + 16}" text-anchor="middle">{tx:.3g}</text>')
    for ty in _ticks(ylo, yhi):
        out.append(f'<line x1="{_ML - 4}" y1="{py(ty):.1f}" x2="{_ML}" y2="{py(ty):.1f}" stroke="black"/>')
        out.append(f'<text x="{_ML - 7}" y="{py(ty) + 3.5:.1f}" text-anchor="end">{ty:.3g}</text>')
    if x_label:
        out.append(f'<text x="{(_ML + _W - _MR) / 2:.1f}" y="{_H - 10}" text-anchor="middle">{x_label}</text>')
    if y_label:
        ycenter = (_MT + _H - _MB) / 2
        out.append(f'<text x="14" y="{ycenter:.1f}" text-anchor="middle" transform="rotate(-90 14 {ycenter:.1f})">{y_label}</text>')
    # zero line, when visible
    if ylo < 0.0 < yhi:
        out.append(f'<line x1="{_ML}" y1="{py(0.0):.1f}" x2="{_W - _MR}" y2="{py(0.0):.1f}" stroke="#999" stroke-dasharray="2,3"/>')
    for s in series:
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(s.xs, s.ys))
        dash = ' stroke-dasharray="6,4"' if s.dashed else ""
        out.append(f'<polyline points="{pts}" fill="none" stroke="{s.color}" stroke-width="1.6"{dash}/>')
    # legend, top-right inside the plot area
    ly = _MT + 8
    for s in series:
        lx = _W - _MR - 150
        dash = ' stroke-dasharray="6,4"' if s.dashed else ""
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 26}" y2="{ly}" stroke="{s.color}" stroke-width="1.6"{dash}/>')
        out.append(f'<text x="{lx + 32}" y="{ly + 3.5}">{s.label}</text>')
        ly += 15
    out.append("</svg>")
    return "\n".join(out)


def panel_row(panels: Sequence[str]) -> str:
    """Lay finished charts side by side in one document."""
    total_w = _W * len(panels)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" height="{_H}" '
           f'viewBox="0 0 {total_w} {_H}">']
    for i, panel in enumerate(panels):
        out.append(f'<g transform="translate({i * _W} 0)">')
        out.append(panel)
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out)


def write_svg(path: Union[str, os.PathLike], svg_text: str) -> None:
    with open(path, "w") as fh:
        fh.write(svg_text + "\n")
