"""Deterministic SVG line charts of data versus fitted curves.

No plotting dependency: the renderer emits plain SVG text with a fixed
960x540 viewBox, so the same spec always produces byte-identical
output and tests can diff files directly.  Data and fitted curve are
the only ``<polyline>`` elements; the optional train/forecast split
marker is the only ``<line>``; axes and ticks are ``<path>`` strokes.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, timedelta
from xml.sax.saxutils import escape

import numpy as np

WIDTH = 960
HEIGHT = 540
MARGIN_LEFT = 78
MARGIN_RIGHT = 26
MARGIN_TOP = 46
MARGIN_BOTTOM = 64

DATA_COLOR = "#1f77b4"
CURVE_COLOR = "#d62728"
SPLIT_COLOR = "#555555"


@dataclass(frozen=True)
class ChartSpec:
    """Everything needed to draw one chart, value-only and immutable."""

    title: str
    x_label: str
    y_label: str
    data_points: tuple[tuple[float, float], ...]
    curve_points: tuple[tuple[float, float], ...]
    data_label: str = "data"
    curve_label: str = "fitted curve"
    split_x: float | None = None
    start_date: date | None = None

    def __post_init__(self):
        for name in ("data_points", "curve_points"):
            pts = tuple((float(x), float(y)) for x, y in getattr(self, name))
            if not pts:
                raise ValueError(f"{name} must be non-empty")
            if not all(np.isfinite(x) and np.isfinite(y) for x, y in pts):
                raise ValueError(f"{name} must hold finite coordinates")
            object.__setattr__(self, name, pts)
        if self.split_x is not None and not np.isfinite(self.split_x):
            raise ValueError("split_x must be finite")


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(target, 2)
    power = 10.0 ** np.floor(np.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = mult * power
        if raw <= step:
            break
    first = np.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + step * 1e-9:
        ticks.append(float(round(v / step) * step))
        v += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _fmt_tick(v: float) -> str:
    if abs(v - round(v)) < 1e-9:
        return str(int(round(v)))
    return f"{v:g}"


def render_chart(spec: ChartSpec) -> str:
    """Render a chart spec to SVG text (same spec, same bytes)."""
    xs = [p[0] for p in spec.data_points + spec.curve_points]
    ys = [p[1] for p in spec.data_points + spec.curve_points]
    if spec.split_x is not None:
        xs.append(spec.split_x)
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    pad = 0.05 * (y_hi - y_lo) or 1.0
    y_lo -= pad
    y_hi += pad

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(x: float) -> float:
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h

    def polyline(points, color, label):
        coords = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in points)
        return (
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{coords}"><title>{escape(label)}</title></polyline>'
        )

    x_ticks = _nice_ticks(x_lo, x_hi)
    y_ticks = _nice_ticks(y_lo, y_hi)

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">'
    )
    out.append(f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>')
    out.append(
        f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{escape(spec.title)}</text>'
    )

    # axes as one path each, ticks as short path strokes
    x0, y0 = MARGIN_LEFT, HEIGHT - MARGIN_BOTTOM
    x1, y1 = WIDTH - MARGIN_RIGHT, MARGIN_TOP
    out.append(
        f'<path d="M {x0} {y1} L {x0} {y0} L {x1} {y0}" fill="none" '
        f'stroke="#000000" stroke-width="1"/>'
    )
    tick_parts = []
    labels = []
    for tx in x_ticks:
        px = sx(tx)
        tick_parts.append(f"M {_fmt(px)} {y0} L {_fmt(px)} {y0 + 5}")
        if spec.start_date is not None:
            text = (spec.start_date + timedelta(days=int(round(tx)))).isoformat()
        else:
            text = _fmt_tick(tx)
        labels.append(
            f'<text x="{_fmt(px)}" y="{y0 + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{escape(text)}</text>'
        )
    for ty in y_ticks:
        py = sy(ty)
        tick_parts.append(f"M {x0} {_fmt(py)} L {x0 - 5} {_fmt(py)}")
        labels.append(
            f'<text x="{x0 - 8}" y="{_fmt(py + 3.5)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{escape(_fmt_tick(ty))}</text>'
        )
    out.append(
        f'<path d="{" ".join(tick_parts)}" fill="none" stroke="#000000" '
        f'stroke-width="1"/>'
    )
    out.extend(labels)
    out.append(
        f'<text x="{(x0 + x1) // 2}" y="{HEIGHT - 16}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{escape(spec.x_label)}</text>'
    )
    out.append(
        f'<text x="20" y="{(y0 + y1) // 2}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 20 {(y0 + y1) // 2})">{escape(spec.y_label)}</text>'
    )

    if spec.split_x is not None:
        px = _fmt(sx(spec.split_x))
        out.append(
            f'<line x1="{px}" y1="{y1}" x2="{px}" y2="{y0}" '
            f'stroke="{SPLIT_COLOR}" stroke-width="1" stroke-dasharray="5,4"/>'
        )

    out.append(polyline(spec.data_points, DATA_COLOR, spec.data_label))
    out.append(polyline(spec.curve_points, CURVE_COLOR, spec.curve_label))

    legend_x = MARGIN_LEFT + 12
    legend_y = MARGIN_TOP + 14
    for i, (color, label) in enumerate(
        ((DATA_COLOR, spec.data_label), (CURVE_COLOR, spec.curve_label))
    ):
        ly = legend_y + 16 * i
        out.append(
            f'<path d="M {legend_x} {ly - 4} L {legend_x + 22} {ly - 4}" '
            f'stroke="{color}" stroke-width="2" fill="none"/>'
        )
        out.append(
            f'<text x="{legend_x + 28}" y="{ly}" font-family="sans-serif" '
            f'font-size="11">{escape(label)}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"
