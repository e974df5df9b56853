"""Minimal deterministic SVG emitter: log-log polyline plots with a legend.

No plotting dependency; byte output depends only on the data passed in.
"""

from __future__ import annotations

import math
from typing import Sequence

_WIDTH, _HEIGHT = 640, 440
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 20, 36, 50
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _decades(lo: float, hi: float) -> list[int]:
    return list(range(math.floor(math.log10(lo)), math.ceil(math.log10(hi)) + 1))


def loglog_svg(series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
               title: str = "", xlabel: str = "", ylabel: str = "") -> str:
    """Render (label, xs, ys) series on log-log axes; all values must be positive."""
    pts = [(x, y) for _, xs, ys in series for x, y in zip(xs, ys)]
    if not pts or any(x <= 0 or y <= 0 for x, y in pts):
        raise ValueError("log-log plot needs positive data")
    x_lo, x_hi = min(p[0] for p in pts), max(p[0] for p in pts)
    y_lo, y_hi = min(p[1] for p in pts), max(p[1] for p in pts)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo / 2, x_hi * 2
    if y_lo == y_hi:
        y_lo, y_hi = y_lo / 2, y_hi * 2
    lx0, lx1 = math.log10(x_lo), math.log10(x_hi)
    ly0, ly1 = math.log10(y_lo), math.log10(y_hi)
    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(x: float) -> float:
        return _MARGIN_L + (math.log10(x) - lx0) / (lx1 - lx0) * plot_w

    def py(y: float) -> float:
        return _MARGIN_T + (ly1 - math.log10(y)) / (ly1 - ly0) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="black" stroke-width="1"/>',
    ]
    if title:
        out.append(f'<text x="{_WIDTH / 2:.1f}" y="22" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="15">{title}</text>')
    for d in _decades(x_lo, x_hi):
        x = 10.0 ** d
        if x_lo <= x <= x_hi:
            out.append(f'<line x1="{px(x):.2f}" y1="{_MARGIN_T}" x2="{px(x):.2f}" '
                       f'y2="{_MARGIN_T + plot_h}" stroke="#cccccc" stroke-width="0.5"/>')
            out.append(f'<text x="{px(x):.2f}" y="{_MARGIN_T + plot_h + 18}" '
                       f'text-anchor="middle" font-family="sans-serif" font-size="11">'
                       f'1e{d}</text>')
    for d in _decades(y_lo, y_hi):
        y = 10.0 ** d
        if y_lo <= y <= y_hi:
            out.append(f'<line x1="{_MARGIN_L}" y1="{py(y):.2f}" x2="{_MARGIN_L + plot_w}" '
                       f'y2="{py(y):.2f}" stroke="#cccccc" stroke-width="0.5"/>')
            out.append(f'<text x="{_MARGIN_L - 6}" y="{py(y) + 4:.2f}" text-anchor="end" '
                       f'font-family="sans-serif" font-size="11">1e{d}</text>')
    if xlabel:
        out.append(f'<text x="{_MARGIN_L + plot_w / 2:.1f}" y="{_HEIGHT - 12}" '
                   f'text-anchor="middle" font-family="sans-serif" font-size="13">{xlabel}</text>')
    if ylabel:
        out.append(f'<text x="16" y="{_MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="13" '
                   f'transform="rotate(-90 16 {_MARGIN_T + plot_h / 2:.1f})">{ylabel}</text>')
    for idx, (label, xs, ys) in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        path = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        out.append(f'<polyline points="{path}" fill="none" stroke="{color}" '
                   'stroke-width="1.5"/>')
        for x, y in zip(xs, ys):
            out.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="2.5" fill="{color}"/>')
        ly = _MARGIN_T + 14 + 16 * idx
        out.append(f'<line x1="{_MARGIN_L + plot_w - 130}" y1="{ly}" '
                   f'x2="{_MARGIN_L + plot_w - 110}" y2="{ly}" stroke="{color}" '
                   'stroke-width="2"/>')
        out.append(f'<text x="{_MARGIN_L + plot_w - 104}" y="{ly + 4}" '
                   f'font-family="sans-serif" font-size="11">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
