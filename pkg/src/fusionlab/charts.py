"""Hand-built SVG charts.

Markup is assembled directly (no plotting stack) so identical inputs always
produce identical bytes. Every chart has a sibling CSV carrying exactly the
plotted numbers; these functions only draw.
"""

from __future__ import annotations

import math

_WIDTH = 640
_HEIGHT = 440
_MARGIN_LEFT = 64
_MARGIN_RIGHT = 20
_MARGIN_TOP = 36
_MARGIN_BOTTOM = 52


def _fmt(value: float) -> str:
    return format(value, ".10g")


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + k * step for k in range(count)]


class _Frame:
    """Axes, tick marks, and data-space to pixel-space mapping."""

    def __init__(self, x_range, y_range):
        self.x_lo, self.x_hi = x_range
        self.y_lo, self.y_hi = y_range
        if self.x_hi == self.x_lo:
            self.x_hi = self.x_lo + 1.0
        if self.y_hi == self.y_lo:
            self.y_hi = self.y_lo + 1.0
        self.plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
        self.plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def x(self, value: float) -> float:
        frac = (value - self.x_lo) / (self.x_hi - self.x_lo)
        return _MARGIN_LEFT + frac * self.plot_w

    def y(self, value: float) -> float:
        frac = (value - self.y_lo) / (self.y_hi - self.y_lo)
        return _MARGIN_TOP + (1.0 - frac) * self.plot_h

    def axes(self, title: str, x_label: str, y_label: str) -> list[str]:
        parts = [
            f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="#ffffff"/>',
            f'<text x="{_WIDTH / 2}" y="20" text-anchor="middle" '
            f'font-size="14" fill="#222">{title}</text>',
        ]
        for tick in _ticks(self.x_lo, self.x_hi):
            px = self.x(tick)
            parts.append(
                f'<line x1="{_fmt(px)}" y1="{_MARGIN_TOP}" x2="{_fmt(px)}" '
                f'y2="{_HEIGHT - _MARGIN_BOTTOM}" stroke="#e6e6e6" stroke-width="1"/>'
            )
            parts.append(
                f'<text x="{_fmt(px)}" y="{_HEIGHT - _MARGIN_BOTTOM + 16}" '
                f'text-anchor="middle" font-size="10" fill="#555">{format(tick, ".4g")}</text>'
            )
        for tick in _ticks(self.y_lo, self.y_hi):
            py = self.y(tick)
            parts.append(
                f'<line x1="{_MARGIN_LEFT}" y1="{_fmt(py)}" x2="{_WIDTH - _MARGIN_RIGHT}" '
                f'y2="{_fmt(py)}" stroke="#e6e6e6" stroke-width="1"/>'
            )
            parts.append(
                f'<text x="{_MARGIN_LEFT - 6}" y="{_fmt(py + 3)}" text-anchor="end" '
                f'font-size="10" fill="#555">{format(tick, ".4g")}</text>'
            )
        parts.append(
            f'<text x="{_WIDTH / 2}" y="{_HEIGHT - 12}" text-anchor="middle" '
            f'font-size="12" fill="#222">{x_label}</text>'
        )
        parts.append(
            f'<text x="16" y="{_HEIGHT / 2}" text-anchor="middle" font-size="12" '
            f'fill="#222" transform="rotate(-90, 16, {_HEIGHT / 2})">{y_label}</text>'
        )
        return parts


def _svg(parts: list[str]) -> str:
    body = "\n".join("  " + p for p in parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_WIDTH} {_HEIGHT}" '
        f'font-family="sans-serif">\n{body}\n</svg>\n'
    )


def color_ramp(t: float) -> str:
    """Two-stop blue-to-red ramp over [0, 1]."""
    t = min(1.0, max(0.0, t))
    lo, hi = (0x2C, 0x7F, 0xB8), (0xD7, 0x30, 0x1F)
    rgb = (round(a + (b - a) * t) for a, b in zip(lo, hi))
    return "#" + "".join(f"{c:02x}" for c in rgb)


def scatter_svg(
    xs,
    ys,
    color_values,
    title: str,
    x_label: str,
    y_label: str,
) -> str:
    """Scatter with a color ramp over ``color_values`` and a zero line."""
    xs = [float(v) for v in xs]
    ys = [float(v) for v in ys]
    colors = [float(v) for v in color_values]
    frame = _Frame((min(xs), max(xs)), (min(ys + [0.0]), max(ys + [0.0])))
    parts = frame.axes(title, x_label, y_label)
    zero_y = frame.y(0.0)
    parts.append(
        f'<line x1="{_MARGIN_LEFT}" y1="{_fmt(zero_y)}" x2="{_WIDTH - _MARGIN_RIGHT}" '
        f'y2="{_fmt(zero_y)}" stroke="#444" stroke-width="1" stroke-dasharray="4 3"/>'
    )
    c_lo, c_hi = min(colors), max(colors)
    span = c_hi - c_lo
    for x, y, c in zip(xs, ys, colors):
        t = 0.5 if span == 0.0 else (c - c_lo) / span
        parts.append(
            f'<circle cx="{_fmt(frame.x(x))}" cy="{_fmt(frame.y(y))}" r="3" '
            f'fill="{color_ramp(t)}" fill-opacity="0.75"/>'
        )
    parts.append(
        f'<text x="{_WIDTH - _MARGIN_RIGHT}" y="{_MARGIN_TOP - 6}" text-anchor="end" '
        f'font-size="10" fill="#555">color: best baseline '
        f'{format(c_lo, ".4g")} to {format(c_hi, ".4g")}</text>'
    )
    return _svg(parts)


def line_svg(
    xs,
    ys,
    title: str,
    x_label: str,
    y_label: str,
    h_lines: list[tuple[str, float, str]] | None = None,
    v_line: tuple[str, float] | None = None,
) -> str:
    """Step-style line chart with labelled horizontal/vertical reference lines.

    ``h_lines`` entries are (label, y value, dash pattern or empty for solid).
    """
    xs = [float(v) for v in xs]
    ys = [float(v) for v in ys]
    extra = [value for _, value, _ in (h_lines or [])]
    frame = _Frame((min(xs), max(xs)), (min(ys + extra), max(ys + extra)))
    parts = frame.axes(title, x_label, y_label)
    for label, value, dash in h_lines or []:
        py = frame.y(value)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        parts.append(
            f'<line x1="{_MARGIN_LEFT}" y1="{_fmt(py)}" x2="{_WIDTH - _MARGIN_RIGHT}" '
            f'y2="{_fmt(py)}" stroke="#b15928" stroke-width="1.2"{dash_attr}/>'
        )
        parts.append(
            f'<text x="{_MARGIN_LEFT + 4}" y="{_fmt(py - 4)}" font-size="10" '
            f'fill="#b15928">{label}</text>'
        )
    if v_line is not None:
        label, value = v_line
        px = frame.x(value)
        parts.append(
            f'<line x1="{_fmt(px)}" y1="{_MARGIN_TOP}" x2="{_fmt(px)}" '
            f'y2="{_HEIGHT - _MARGIN_BOTTOM}" stroke="#222" stroke-width="1.2"/>'
        )
        parts.append(
            f'<text x="{_fmt(px + 4)}" y="{_MARGIN_TOP + 12}" font-size="10" '
            f'fill="#222">{label}</text>'
        )
    if not any(math.isnan(v) for v in ys):
        path = []
        for k, (x, y) in enumerate(zip(xs, ys)):
            cmd = "M" if k == 0 else "L"
            path.append(f"{cmd}{_fmt(frame.x(x))},{_fmt(frame.y(y))}")
        parts.append(
            f'<path d="{" ".join(path)}" fill="none" stroke="#1f78b4" stroke-width="1.8"/>'
        )
    for x, y in zip(xs, ys):
        parts.append(
            f'<circle cx="{_fmt(frame.x(x))}" cy="{_fmt(frame.y(y))}" r="2.4" fill="#1f78b4"/>'
        )
    return _svg(parts)
