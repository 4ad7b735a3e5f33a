"""Minimal self-contained SVG line plots.

Fixed 800x600 viewport, fixed styling, no timestamps or generated ids:
the same curves always produce byte-identical documents, which the CLI's
determinism contract relies on.
"""

from __future__ import annotations

import math
from typing import Sequence

WIDTH, HEIGHT = 800, 600
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 80, 24, 40, 60

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
)


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    step = 10 * mag
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step - 1e-9) * step
    out = []
    t = first
    while t <= hi + 1e-9 * span:
        out.append(0.0 if abs(t) < 1e-12 else t)
        t += step
    return out


def render_plot(
    curves: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    title: str,
    xlabel: str = "R1 (bits)",
    ylabel: str = "R2 (bits)",
) -> str:
    """Render labeled (x, y) polylines into a standalone SVG document."""
    xs_all = [x for _, xs, _ in curves for x in xs]
    ys_all = [y for _, _, ys in curves for y in ys]
    x_hi = max(xs_all) if xs_all else 1.0
    y_hi = max(ys_all) if ys_all else 1.0
    x_hi = x_hi * 1.05 if x_hi > 0 else 1.0
    y_hi = y_hi * 1.05 if y_hi > 0 else 1.0

    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def px(x: float) -> float:
        return MARGIN_L + pw * x / x_hi

    def py(y: float) -> float:
        return HEIGHT - MARGIN_B - ph * y / y_hi

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{_esc(title)}</text>',
    ]
    axis = (
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" '
        f'y2="{HEIGHT - MARGIN_B}" stroke="black"/>'
        f'<line x1="{MARGIN_L}" y1="{HEIGHT - MARGIN_B}" '
        f'x2="{WIDTH - MARGIN_R}" y2="{HEIGHT - MARGIN_B}" stroke="black"/>'
    )
    parts.append(axis)
    for t in _ticks(0.0, x_hi):
        x = px(t)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{HEIGHT - MARGIN_B}" x2="{_fmt(x)}" '
            f'y2="{HEIGHT - MARGIN_B + 5}" stroke="black"/>'
            f'<text x="{_fmt(x)}" y="{HEIGHT - MARGIN_B + 20}" '
            f'text-anchor="middle" font-family="sans-serif" '
            f'font-size="11">{t:g}</text>'
        )
    for t in _ticks(0.0, y_hi):
        y = py(t)
        parts.append(
            f'<line x1="{MARGIN_L - 5}" y1="{_fmt(y)}" x2="{MARGIN_L}" '
            f'y2="{_fmt(y)}" stroke="black"/>'
            f'<text x="{MARGIN_L - 8}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{t:g}</text>'
        )
    parts.append(
        f'<text x="{MARGIN_L + pw / 2:.0f}" y="{HEIGHT - 16}" '
        f'text-anchor="middle" font-family="sans-serif" '
        f'font-size="13">{_esc(xlabel)}</text>'
    )
    parts.append(
        f'<text x="20" y="{MARGIN_T + ph / 2:.0f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 20 {MARGIN_T + ph / 2:.0f})">{_esc(ylabel)}</text>'
    )
    for i, (label, xs, ys) in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"/>'
        )
        ly = MARGIN_T + 16 + 18 * i
        lx = WIDTH - MARGIN_R - 180
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
            f'<text x="{lx + 30}" y="{ly}" font-family="sans-serif" '
            f'font-size="12">{_esc(label)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
