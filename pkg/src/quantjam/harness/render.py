"""CSV and self-contained SVG output."""

import csv
import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from ..exceptions import ConfigError
from .experiments import CdfResult, Table

__all__ = ["Axes", "render_csv", "render_svg", "cdf_points", "format_value"]

_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
            "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939")


def format_value(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return f"{float(v):.12g}"


def render_csv(obj, path):
    """Write a :class:`Table` or :class:`CdfResult` as UTF-8 CSV with LF endings.

    Stochastic outputs (a CDF, or a table carrying a seed) get a leading
    ``# seed=<n>`` line. A CDF is written as ``value,cdf`` with
    ``cdf = rank / trials``.
    """
    if isinstance(obj, CdfResult):
        columns = ["value", "cdf"]
        n = obj.trials
        rows = [(v, (k + 1) / n) for k, v in enumerate(obj.sorted_values)]
        seed = obj.seed
    elif isinstance(obj, Table):
        columns, rows, seed = obj.columns, obj.rows, obj.seed
    else:
        raise TypeError(f"cannot render {type(obj).__name__} as CSV")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if seed is not None:
            fh.write(f"# seed={seed}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(v) for v in row])


@dataclass(frozen=True)
class Axes:
    xlabel: str = "x"
    ylabel: str = "y"
    xlog: bool = False
    step: bool = False
    title: str = ""
    width: int = 720
    height: int = 440


def cdf_points(result):
    """``(value, rank/trials)`` pairs of an empirical CDF."""
    n = result.trials
    return [(float(v), (k + 1) / n) for k, v in enumerate(result.sorted_values)]


def _nice_ticks(lo, hi, count=6):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def render_svg(curves, path, axes=None):
    """Draw ``curves`` (a list of ``(label, [(x, y), ...])``) into an SVG file.

    ``axes.step`` draws step functions (for CDFs); otherwise polylines.
    ``axes.xlog`` uses a base-10 x axis and requires positive x values.
    """
    axes = axes or Axes()
    if not curves:
        raise ConfigError("need at least one curve", "curves")
    prepared = []
    for label, pts in curves:
        arr = np.asarray(pts, dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 2 or arr.shape[1] != 2:
            raise ConfigError(f"curve {label!r} needs at least two (x, y) points", "curves")
        if axes.xlog:
            if np.any(arr[:, 0] <= 0):
                raise ConfigError(f"curve {label!r} has non-positive x on a log axis", "curves")
            arr = np.column_stack([np.log10(arr[:, 0]), arr[:, 1]])
        prepared.append((str(label), arr))

    allpts = np.vstack([a for _, a in prepared])
    x0, x1 = float(allpts[:, 0].min()), float(allpts[:, 0].max())
    y0, y1 = float(allpts[:, 1].min()), float(allpts[:, 1].max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    W, Hh = axes.width, axes.height
    ml, mr, mt, mb = 70, 180, 30, 50
    pw, ph = W - ml - mr, Hh - mt - mb

    def sx(x):
        return ml + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return mt + ph - (y - y0) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{Hh}" '
           f'viewBox="0 0 {W} {Hh}" font-family="sans-serif" font-size="11">',
           f'<rect x="0" y="0" width="{W}" height="{Hh}" fill="white"/>',
           f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>']
    if axes.title:
        out.append(f'<text x="{ml + pw / 2:.2f}" y="18" text-anchor="middle">{escape(axes.title)}</text>')
    for t in _nice_ticks(x0, x1):
        label = f"1e{t:g}" if axes.xlog else f"{t:g}"
        out.append(f'<line x1="{sx(t):.2f}" y1="{mt + ph}" x2="{sx(t):.2f}" y2="{mt + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{sx(t):.2f}" y="{mt + ph + 18}" text-anchor="middle">{label}</text>')
    for t in _nice_ticks(y0, y1):
        out.append(f'<line x1="{ml - 5}" y1="{sy(t):.2f}" x2="{ml}" y2="{sy(t):.2f}" stroke="black"/>')
        out.append(f'<text x="{ml - 8}" y="{sy(t) + 4:.2f}" text-anchor="end">{t:g}</text>')
    out.append(f'<text x="{ml + pw / 2:.2f}" y="{Hh - 10}" text-anchor="middle">{escape(axes.xlabel)}</text>')
    out.append(f'<text x="16" y="{mt + ph / 2:.2f}" text-anchor="middle" '
               f'transform="rotate(-90 16 {mt + ph / 2:.2f})">{escape(axes.ylabel)}</text>')

    for k, (label, arr) in enumerate(prepared):
        color = _PALETTE[k % len(_PALETTE)]
        if axes.step:
            pts = [(arr[0, 0], y0)]
            for i in range(arr.shape[0]):
                prev_y = arr[i - 1, 1] if i else y0
                pts.append((arr[i, 0], prev_y))
                pts.append((arr[i, 0], arr[i, 1]))
        else:
            pts = [tuple(p) for p in arr]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>')
        ly = mt + 14 + 16 * k
        out.append(f'<line x1="{ml + pw + 12}" y1="{ly - 4}" x2="{ml + pw + 32}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{ml + pw + 38}" y="{ly}">{escape(label)}</text>')
    out.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(out) + "\n")
