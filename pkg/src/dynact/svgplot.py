"""Minimal deterministic SVG scatter/line plots.

Fixed 800x600 viewport, linear axes auto-ranged with 5% padding, data as
circles (filled or empty) and curves as polylines. Output is presentational;
the CSV artifacts next to each figure are the golden data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

WIDTH = 800
HEIGHT = 600
MARGIN = dict(left=70, right=20, top=40, bottom=50)

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"]


@dataclass(frozen=True)
class Scatter:
    xs: tuple
    ys: tuple
    filled: bool = True
    color: str = "#1f77b4"
    radius: float = 4.0
    label: str = ""


@dataclass(frozen=True)
class Curve:
    xs: tuple
    ys: tuple
    color: str = "#d62728"
    dashed: bool = False
    label: str = ""


@dataclass
class Panel:
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""
    series: list = field(default_factory=list)
    hlines: list = field(default_factory=list)  # (y, dashed) pairs


def _data_bounds(panel: Panel) -> tuple[float, float, float, float]:
    xs: list[float] = []
    ys: list[float] = []
    for s in panel.series:
        xs.extend(float(v) for v in s.xs)
        ys.extend(float(v) for v in s.ys)
    ys.extend(float(y) for y, _ in panel.hlines)
    if not xs or not ys:
        return 0.0, 1.0, 0.0, 1.0
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x0 == x1:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y0 == y1:
        y0, y1 = y0 - 0.5, y1 + 0.5
    px, py = 0.05 * (x1 - x0), 0.05 * (y1 - y0)
    return x0 - px, x1 + px, y0 - py, y1 + py


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    span = hi - lo
    raw = span / n
    mag = 10.0 ** math.floor(math.log10(raw))
    for m in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= m * mag:
            step = m * mag
            break
    first = math.ceil(lo / step) * step
    out = []
    t = first
    while t <= hi + 1e-12 * span:
        out.append(0.0 if abs(t) < 1e-12 * span else t)
        t += step
    return out


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _render_panel(panel: Panel, x_off: float, y_off: float, width: float, height: float) -> list[str]:
    x0, x1, y0, y1 = _data_bounds(panel)
    inner_w = width - MARGIN["left"] - MARGIN["right"]
    inner_h = height - MARGIN["top"] - MARGIN["bottom"]
    ox = x_off + MARGIN["left"]
    oy = y_off + MARGIN["top"]

    def sx(x: float) -> float:
        return ox + (x - x0) / (x1 - x0) * inner_w

    def sy(y: float) -> float:
        return oy + inner_h - (y - y0) / (y1 - y0) * inner_h

    parts = []
    parts.append(
        f'<rect x="{ox:.2f}" y="{oy:.2f}" width="{inner_w:.2f}" height="{inner_h:.2f}" '
        'fill="none" stroke="#333" stroke-width="1"/>'
    )
    if panel.title:
        parts.append(
            f'<text x="{ox + inner_w / 2:.2f}" y="{y_off + 24:.2f}" text-anchor="middle" '
            f'font-size="15" font-family="sans-serif">{panel.title}</text>'
        )
    for t in _ticks(x0, x1):
        parts.append(
            f'<line x1="{sx(t):.2f}" y1="{oy + inner_h:.2f}" x2="{sx(t):.2f}" '
            f'y2="{oy + inner_h + 5:.2f}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{sx(t):.2f}" y="{oy + inner_h + 18:.2f}" text-anchor="middle" '
            f'font-size="11" font-family="sans-serif">{_fmt(t)}</text>'
        )
    for t in _ticks(y0, y1):
        parts.append(
            f'<line x1="{ox - 5:.2f}" y1="{sy(t):.2f}" x2="{ox:.2f}" y2="{sy(t):.2f}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{ox - 8:.2f}" y="{sy(t) + 4:.2f}" text-anchor="end" '
            f'font-size="11" font-family="sans-serif">{_fmt(t)}</text>'
        )
    if panel.xlabel:
        parts.append(
            f'<text x="{ox + inner_w / 2:.2f}" y="{oy + inner_h + 38:.2f}" text-anchor="middle" '
            f'font-size="13" font-family="sans-serif">{panel.xlabel}</text>'
        )
    if panel.ylabel:
        cx, cy = x_off + 18, oy + inner_h / 2
        parts.append(
            f'<text x="{cx:.2f}" y="{cy:.2f}" text-anchor="middle" font-size="13" '
            f'font-family="sans-serif" transform="rotate(-90 {cx:.2f} {cy:.2f})">{panel.ylabel}</text>'
        )
    for y, dashed in panel.hlines:
        dash = ' stroke-dasharray="6 4"' if dashed else ""
        parts.append(
            f'<line x1="{ox:.2f}" y1="{sy(y):.2f}" x2="{ox + inner_w:.2f}" y2="{sy(y):.2f}" '
            f'stroke="#777" stroke-width="1"{dash}/>'
        )
    legend_y = oy + 16
    for s in panel.series:
        if isinstance(s, Curve):
            pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(s.xs, s.ys))
            dash = ' stroke-dasharray="6 4"' if s.dashed else ""
            parts.append(
                f'<polyline points="{pts}" fill="none" stroke="{s.color}" stroke-width="1.5"{dash}/>'
            )
        else:
            fill = s.color if s.filled else "none"
            for x, y in zip(s.xs, s.ys):
                parts.append(
                    f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="{s.radius}" '
                    f'fill="{fill}" stroke="{s.color}" stroke-width="1"/>'
                )
        if s.label:
            parts.append(
                f'<text x="{ox + inner_w - 8:.2f}" y="{legend_y:.2f}" text-anchor="end" '
                f'font-size="12" font-family="sans-serif" fill="{s.color}">{s.label}</text>'
            )
            legend_y += 15
    return parts


def render_figure(panels: list[Panel], width: int = WIDTH, height: int = HEIGHT) -> str:
    """Render panels stacked vertically into one SVG document."""
    panel_h = height / len(panels)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for k, panel in enumerate(panels):
        parts.extend(_render_panel(panel, 0.0, k * panel_h, width, panel_h))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def color_cycle(i: int) -> str:
    return _COLORS[i % len(_COLORS)]
