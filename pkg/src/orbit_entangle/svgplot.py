"""Tiny dependency-free SVG line/contour plots.

Output is deliberately plain (polylines, axes, tick labels, a legend) and
byte-deterministic for identical inputs: figures exist for eyeballing
against reference plots, the CSV files are the data contract.
"""

from __future__ import annotations

import math

__all__ = ["line_plot", "contour_plot", "contour_segments"]

_W, _H = 640, 440
_ML, _MR, _MT, _MB = 70, 20, 30, 50
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
           "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    for m in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= m * mag:
            step = m * mag
            break
    start = math.ceil(lo / step) * step
    out = []
    v = start
    while v <= hi + 1e-12 * step:
        out.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return out


class _Canvas:
    def __init__(self, xlim, ylim, title, xlabel, ylabel):
        self.xlim, self.ylim = xlim, ylim
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
            f'viewBox="0 0 {_W} {_H}" font-family="monospace" font-size="12">',
            f'<rect width="{_W}" height="{_H}" fill="white"/>',
            f'<text x="{_W / 2:.0f}" y="18" text-anchor="middle">{title}</text>',
        ]
        self._axes(xlabel, ylabel)

    def px(self, x: float) -> float:
        lo, hi = self.xlim
        return _ML + (x - lo) / (hi - lo) * (_W - _ML - _MR)

    def py(self, y: float) -> float:
        lo, hi = self.ylim
        return _H - _MB - (y - lo) / (hi - lo) * (_H - _MT - _MB)

    def _axes(self, xlabel, ylabel):
        x0, x1 = _ML, _W - _MR
        y0, y1 = _H - _MB, _MT
        self.parts.append(f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" '
                          f'height="{y0 - y1}" fill="none" stroke="black"/>')
        for t in _ticks(*self.xlim):
            px = self.px(t)
            if x0 - 0.5 <= px <= x1 + 0.5:
                self.parts.append(f'<line x1="{px:.1f}" y1="{y0}" x2="{px:.1f}" '
                                  f'y2="{y0 + 5}" stroke="black"/>')
                self.parts.append(f'<text x="{px:.1f}" y="{y0 + 18}" '
                                  f'text-anchor="middle">{t:g}</text>')
        for t in _ticks(*self.ylim):
            py = self.py(t)
            if y1 - 0.5 <= py <= y0 + 0.5:
                self.parts.append(f'<line x1="{x0 - 5}" y1="{py:.1f}" x2="{x0}" '
                                  f'y2="{py:.1f}" stroke="black"/>')
                self.parts.append(f'<text x="{x0 - 8}" y="{py + 4:.1f}" '
                                  f'text-anchor="end">{t:g}</text>')
        self.parts.append(f'<text x="{(x0 + x1) / 2:.0f}" y="{_H - 12}" '
                          f'text-anchor="middle">{xlabel}</text>')
        self.parts.append(f'<text x="16" y="{(y0 + y1) / 2:.0f}" text-anchor="middle" '
                          f'transform="rotate(-90 16 {(y0 + y1) / 2:.0f})">{ylabel}</text>')

    def polyline(self, xs, ys, color: str):
        pts = " ".join(f"{self.px(x):.2f},{self.py(y):.2f}"
                       for x, y in zip(xs, ys)
                       if math.isfinite(x) and math.isfinite(y))
        if pts:
            self.parts.append(f'<polyline points="{pts}" fill="none" '
                              f'stroke="{color}" stroke-width="1.5"/>')

    def legend(self, labels):
        for i, label in enumerate(labels):
            y = _MT + 16 + 16 * i
            self.parts.append(f'<line x1="{_W - _MR - 120}" y1="{y - 4}" '
                              f'x2="{_W - _MR - 95}" y2="{y - 4}" '
                              f'stroke="{_COLORS[i % len(_COLORS)]}" stroke-width="2"/>')
            self.parts.append(f'<text x="{_W - _MR - 90}" y="{y}">{label}</text>')

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _limits(values) -> tuple[float, float]:
    vals = [v for v in values if math.isfinite(v)]
    if not vals:
        return (0.0, 1.0)
    lo, hi = min(vals), max(vals)
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    pad = 0.04 * (hi - lo)
    return lo - pad, hi + pad


def line_plot(path, xs, series, labels, title="", xlabel="", ylabel=""):
    """Write a multi-series line plot; series is a list of y-arrays over xs."""
    all_y = [y for ys in series for y in ys]
    canvas = _Canvas(_limits(xs), _limits(all_y), title, xlabel, ylabel)
    for i, ys in enumerate(series):
        canvas.polyline(xs, ys, _COLORS[i % len(_COLORS)])
    if labels:
        canvas.legend(labels)
    with open(path, "w") as fh:
        fh.write(canvas.render())


def contour_segments(xs, ys, grid, level: float):
    """Marching-squares segments of grid == level; grid is indexed [iy][ix]."""
    segs = []
    nx, ny = len(xs), len(ys)

    def interp(p1, p2, v1, v2):
        t = (level - v1) / (v2 - v1)
        return (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))

    for j in range(ny - 1):
        for i in range(nx - 1):
            corners = ((xs[i], ys[j]), (xs[i + 1], ys[j]),
                       (xs[i + 1], ys[j + 1]), (xs[i], ys[j + 1]))
            vals = (grid[j][i], grid[j][i + 1], grid[j + 1][i + 1], grid[j + 1][i])
            if any(not math.isfinite(v) for v in vals):
                continue
            pts = []
            for k in range(4):
                v1, v2 = vals[k], vals[(k + 1) % 4]
                if (v1 - level) * (v2 - level) < 0:
                    pts.append(interp(corners[k], corners[(k + 1) % 4], v1, v2))
            if len(pts) >= 2:
                segs.append((pts[0], pts[1]))
            if len(pts) == 4:
                segs.append((pts[2], pts[3]))
    return segs


def contour_plot(path, xs, ys, grid, level=0.0, title="", xlabel="", ylabel=""):
    """Write the level contour of a 2D field as SVG segments."""
    canvas = _Canvas(_limits(xs), _limits(ys), title, xlabel, ylabel)
    for (x1, y1), (x2, y2) in contour_segments(xs, ys, grid, level):
        canvas.parts.append(
            f'<line x1="{canvas.px(x1):.2f}" y1="{canvas.py(y1):.2f}" '
            f'x2="{canvas.px(x2):.2f}" y2="{canvas.py(y2):.2f}" '
            f'stroke="{_COLORS[0]}" stroke-width="1.5"/>')
    with open(path, "w") as fh:
        fh.write(canvas.render())
