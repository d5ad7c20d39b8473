"""Deterministic SVG line plots.

Hand-rolled on purpose: the rendering contract is byte-identical output
for identical input, which rules out library version drift. Only the
small feature set the data files need is supported: one shared x column,
several y series, linear axes with 1-2-5 ticks, a legend.
"""

from __future__ import annotations

import math

WIDTH = 800
HEIGHT = 560
MARGIN_LEFT = 70
MARGIN_RIGHT = 24
MARGIN_TOP = 44
MARGIN_BOTTOM = 54

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")
DASHES = ("", "7,4", "2,3", "8,3,2,3", "5,2", "1,2", "9,2", "4,4")


class PlotError(ValueError):
    """Raised for input a line plot cannot be built from."""


def _escape(text: str) -> str:
    return (str(text).replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;"))


def _nice_step(span: float) -> float:
    """Largest 1-2-5 step that yields at least ~5 intervals."""
    raw = span / 5.0
    magnitude = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * magnitude * (1.0 + 1e-12):
            return mult * magnitude
    return 10.0 * magnitude


def _ticks(lo: float, hi: float) -> list:
    step = _nice_step(hi - lo)
    first = math.ceil(lo / step - 1e-9) * step
    out = []
    value = first
    while value <= hi + 1e-9 * step:
        out.append(0.0 if abs(value) < 1e-12 * step else value)
        value += step
    return out


def render_line_plot(x, ys, labels, title: str = "",
                     x_label: str = "", y_label: str = "") -> str:
    """Render series against a shared abscissa as a standalone SVG string.

    The first series is drawn solid, the rest dashed, colors from a fixed
    palette. Coordinates are emitted with two decimals and tick labels
    with six significant digits, so equal input gives equal bytes.
    """
    xs = [float(v) for v in x]
    if len(xs) < 2:
        raise PlotError("need at least two x values")
    if not ys:
        raise PlotError("need at least one y series")
    series = [[float(v) for v in y] for y in ys]
    for s in series:
        if len(s) != len(xs):
            raise PlotError("every series must match the length of x")
    names = [str(v) for v in labels]
    if len(names) != len(series):
        raise PlotError("labels must match the number of series")
    for v in xs + [v for s in series for v in s]:
        if not math.isfinite(v):
            raise PlotError("data contains non-finite values")

    x_lo, x_hi = min(xs), max(xs)
    if x_hi == x_lo:
        raise PlotError("x range is singular")
    flat = [v for s in series for v in s]
    y_lo, y_hi = min(flat), max(flat)
    if y_hi == y_lo:
        pad = max(abs(y_lo) * 0.1, 0.5)
        y_lo -= pad
        y_hi += pad

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(v: float) -> float:
        return MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w

    def py(v: float) -> float:
        return MARGIN_TOP + (y_hi - v) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH / 2:.2f}" y="24" font-family="sans-serif" '
            f'font-size="16" text-anchor="middle">{_escape(title)}</text>')

    axis_color = "#333333"
    grid_color = "#dddddd"
    x0, x1 = MARGIN_LEFT, MARGIN_LEFT + plot_w
    y0, y1 = MARGIN_TOP, MARGIN_TOP + plot_h
    for tick in _ticks(x_lo, x_hi):
        gx = px(tick)
        parts.append(f'<line x1="{gx:.2f}" y1="{y0}" x2="{gx:.2f}" y2="{y1}" '
                     f'stroke="{grid_color}" stroke-width="1"/>')
        parts.append(f'<line x1="{gx:.2f}" y1="{y1}" x2="{gx:.2f}" y2="{y1 + 5}" '
                     f'stroke="{axis_color}" stroke-width="1"/>')
        parts.append(f'<text x="{gx:.2f}" y="{y1 + 18}" font-family="sans-serif" '
                     f'font-size="11" text-anchor="middle">{tick:.6g}</text>')
    for tick in _ticks(y_lo, y_hi):
        gy = py(tick)
        parts.append(f'<line x1="{x0}" y1="{gy:.2f}" x2="{x1}" y2="{gy:.2f}" '
                     f'stroke="{grid_color}" stroke-width="1"/>')
        parts.append(f'<line x1="{x0 - 5}" y1="{gy:.2f}" x2="{x0}" y2="{gy:.2f}" '
                     f'stroke="{axis_color}" stroke-width="1"/>')
        parts.append(f'<text x="{x0 - 8}" y="{gy + 4:.2f}" font-family="sans-serif" '
                     f'font-size="11" text-anchor="end">{tick:.6g}</text>')
    parts.append(f'<rect x="{x0}" y="{y0}" width="{plot_w}" height="{plot_h}" '
                 f'fill="none" stroke="{axis_color}" stroke-width="1"/>')
    if x_label:
        parts.append(
            f'<text x="{MARGIN_LEFT + plot_w / 2:.2f}" y="{HEIGHT - 14}" '
            f'font-family="sans-serif" font-size="13" '
            f'text-anchor="middle">{_escape(x_label)}</text>')
    if y_label:
        cx, cy = 18, MARGIN_TOP + plot_h / 2
        parts.append(
            f'<text x="{cx}" y="{cy:.2f}" font-family="sans-serif" '
            f'font-size="13" text-anchor="middle" '
            f'transform="rotate(-90 {cx} {cy:.2f})">{_escape(y_label)}</text>')

    for k, s in enumerate(series):
        color = PALETTE[k % len(PALETTE)]
        dash = DASHES[k % len(DASHES)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        points = " ".join(f"{px(xv):.2f},{py(yv):.2f}" for xv, yv in zip(xs, s))
        parts.append(f'<polyline fill="none" stroke="{color}" '
                     f'stroke-width="1.5"{dash_attr} points="{points}"/>')

    legend_x = x0 + 12
    legend_y = y0 + 10
    for k, name in enumerate(names):
        color = PALETTE[k % len(PALETTE)]
        dash = DASHES[k % len(DASHES)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        ly = legend_y + 16 * k
        parts.append(f'<line x1="{legend_x}" y1="{ly}" x2="{legend_x + 26}" '
                     f'y2="{ly}" stroke="{color}" stroke-width="1.5"{dash_attr}/>')
        parts.append(f'<text x="{legend_x + 32}" y="{ly + 4}" '
                     f'font-family="sans-serif" font-size="12">'
                     f'{_escape(name)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
