"""Minimal self-contained SVG line charts.

Presentation only: nothing here feeds back into any computation.  The
output is deterministic (no timestamps, no randomized ids), so repeated
runs produce identical files.
"""

from __future__ import annotations

import math

WIDTH, HEIGHT = 720, 480
MARGIN_LEFT, MARGIN_RIGHT = 72, 24
MARGIN_TOP, MARGIN_BOTTOM = 36, 56
N_TICKS = 5


def emit_plot(xs, ys, *, xlabel: str, ylabel: str, title: str, path: str) -> None:
    """Write one polyline chart of ys against xs to path as SVG."""
    xs = [float(x) for x in xs]
    ys = [float(y) for y in ys]
    if not xs or len(xs) != len(ys):
        raise ValueError("plot needs two equal-length non-empty columns")
    if any(not math.isfinite(v) for v in xs + ys):
        raise ValueError("plot data must be finite")
    content = _render(xs, ys, xlabel, ylabel, title)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(content)


def _render(xs, ys, xlabel, ylabel, title) -> str:
    x_lo, x_hi = _padded_range(min(xs), max(xs))
    y_lo, y_hi = _padded_range(min(ys), max(ys))
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(x):
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h

    points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="22" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{_escape(title)}</text>',
    ]
    frame = (
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" '
        f'height="{plot_h}" fill="none" stroke="black" stroke-width="1"/>'
    )
    parts.append(frame)

    for i in range(N_TICKS):
        frac = i / (N_TICKS - 1)
        x_val = x_lo + frac * (x_hi - x_lo)
        y_val = y_lo + frac * (y_hi - y_lo)
        x_pix, y_pix = px(x_val), py(y_val)
        parts.append(
            f'<line x1="{x_pix:.2f}" y1="{MARGIN_TOP + plot_h}" x2="{x_pix:.2f}" '
            f'y2="{MARGIN_TOP + plot_h + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x_pix:.2f}" y="{MARGIN_TOP + plot_h + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{x_val:.6g}</text>'
        )
        parts.append(
            f'<line x1="{MARGIN_LEFT - 5}" y1="{y_pix:.2f}" x2="{MARGIN_LEFT}" '
            f'y2="{y_pix:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{y_pix + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{y_val:.6g}</text>'
        )

    parts.append(
        f'<text x="{MARGIN_LEFT + plot_w / 2:.0f}" y="{HEIGHT - 16}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{_escape(xlabel)}</text>'
    )
    parts.append(
        f'<text x="18" y="{MARGIN_TOP + plot_h / 2:.0f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {MARGIN_TOP + plot_h / 2:.0f})">{_escape(ylabel)}</text>'
    )
    parts.append(
        f'<polyline fill="none" stroke="#1f77b4" stroke-width="1.5" points="{points}"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _padded_range(lo: float, hi: float) -> tuple[float, float]:
    if lo == hi:
        pad = 0.5 if lo == 0 else abs(lo) * 0.1
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
