"""Standalone SVG scatter plots, no plotting library required.

Layout is fixed: an 800x600 viewBox, linear axes fitted to the data with a
5% margin on each side, legend in the top-right corner. Group styles come
from the sorted group labels so the same panel always renders the same way.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence
from xml.sax.saxutils import escape, quoteattr

WIDTH, HEIGHT = 800, 600
PLOT_LEFT, PLOT_RIGHT, PLOT_TOP, PLOT_BOTTOM = 80, 770, 40, 540
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
           "#9467bd", "#8c564b", "#e377c2", "#17becf")
SHAPES = ("circle", "square", "triangle", "diamond")


def group_styles(labels) -> dict[str, tuple[str, str]]:
    """label -> (colour, shape), assigned in sorted-label order, cycling on overflow."""
    return {label: (PALETTE[i % len(PALETTE)], SHAPES[i % len(SHAPES)])
            for i, label in enumerate(sorted(set(labels)))}


def _span(values: Sequence[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        pad = abs(lo) * 0.05 or 0.5
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def _ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step) * step
    out = []
    v = first
    while v <= hi + step * 1e-9:
        out.append(round(v, 10))
        v += step
    return out


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def _marker(shape: str, x: float, y: float, colour: str, cls: str, r: float = 5.0, extra: str = "") -> str:
    common = f'class="{cls}" fill={quoteattr(colour)} stroke="#222" stroke-width="0.6"{extra}'
    if shape == "circle":
        return f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" {common}/>'
    if shape == "square":
        return f'<rect x="{x - r:.2f}" y="{y - r:.2f}" width="{2 * r}" height="{2 * r}" {common}/>'
    if shape == "triangle":
        pts = f"{x:.2f},{y - r * 1.2:.2f} {x - r * 1.1:.2f},{y + r * 0.8:.2f} {x + r * 1.1:.2f},{y + r * 0.8:.2f}"
    else:
        pts = f"{x:.2f},{y - r * 1.3:.2f} {x + r:.2f},{y:.2f} {x:.2f},{y + r * 1.3:.2f} {x - r:.2f},{y:.2f}"
    return f'<polygon points="{pts}" {common}/>'


def scatter_svg(
    points: Sequence[tuple[float, float, str]],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    hlines: Mapping[str, float] | None = None,
    ids: Sequence[str] | None = None,
) -> str:
    """Render ``(x, y, group)`` points as an SVG document.

    ``hlines`` draws one horizontal line per group at the given y value
    (used for per-group mean M). Data markers carry ``class="marker"``, the
    lines ``class="mean-line"``; legend swatches use their own class so they
    are not counted as data.
    """
    if not points:
        raise ValueError("nothing to plot")
    hlines = dict(hlines or {})
    xs = [p[0] for p in points]
    ys = [p[1] for p in points] + list(hlines.values())
    x0, x1 = _span(xs)
    y0, y1 = _span(ys)
    styles = group_styles([p[2] for p in points] + list(hlines))

    def sx(v):
        return PLOT_LEFT + (v - x0) / (x1 - x0) * (PLOT_RIGHT - PLOT_LEFT)

    def sy(v):
        return PLOT_BOTTOM - (v - y0) / (y1 - y0) * (PLOT_BOTTOM - PLOT_TOP)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2}" y="24" text-anchor="middle" font-size="15">{escape(title)}</text>')

    out.append('<g class="axes" stroke="#444" stroke-width="1">')
    out.append(f'<line x1="{PLOT_LEFT}" y1="{PLOT_BOTTOM}" x2="{PLOT_RIGHT}" y2="{PLOT_BOTTOM}"/>')
    out.append(f'<line x1="{PLOT_LEFT}" y1="{PLOT_TOP}" x2="{PLOT_LEFT}" y2="{PLOT_BOTTOM}"/>')
    out.append("</g>")
    out.append('<g class="ticks" fill="#333">')
    for t in _ticks(x0, x1):
        px = sx(t)
        out.append(f'<line x1="{px:.2f}" y1="{PLOT_BOTTOM}" x2="{px:.2f}" y2="{PLOT_BOTTOM + 5}" stroke="#444"/>')
        out.append(f'<text x="{px:.2f}" y="{PLOT_BOTTOM + 18}" text-anchor="middle">{_fmt(t)}</text>')
    for t in _ticks(y0, y1):
        py = sy(t)
        out.append(f'<line x1="{PLOT_LEFT - 5}" y1="{py:.2f}" x2="{PLOT_LEFT}" y2="{py:.2f}" stroke="#444"/>')
        out.append(f'<text x="{PLOT_LEFT - 8}" y="{py + 4:.2f}" text-anchor="end">{_fmt(t)}</text>')
    out.append("</g>")
    if xlabel:
        out.append(f'<text x="{(PLOT_LEFT + PLOT_RIGHT) / 2}" y="{HEIGHT - 22}" text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        cy = (PLOT_TOP + PLOT_BOTTOM) / 2
        out.append(f'<text x="22" y="{cy}" text-anchor="middle" transform="rotate(-90 22 {cy})">{escape(ylabel)}</text>')

    for label in sorted(hlines):
        py = sy(hlines[label])
        colour = styles[label][0]
        out.append(
            f'<line class="mean-line" data-group={quoteattr(label)} x1="{PLOT_LEFT}" y1="{py:.2f}" '
            f'x2="{PLOT_RIGHT}" y2="{py:.2f}" stroke={quoteattr(colour)} stroke-width="1.5"/>'
        )

    out.append('<g class="points">')
    for i, (x, y, label) in enumerate(points):
        colour, shape = styles[label]
        extra = f" data-group={quoteattr(label)}"
        if ids is not None:
            extra += f" data-id={quoteattr(ids[i])}"
        out.append(_marker(shape, sx(x), sy(y), colour, "marker", extra=extra))
    out.append("</g>")

    out.append('<g class="legend">')
    lx, ly = PLOT_RIGHT - 150, PLOT_TOP + 10
    for row, label in enumerate(sorted(styles)):
        colour, shape = styles[label]
        y = ly + row * 18
        out.append(_marker(shape, lx, y, colour, "legend-swatch", r=4.5))
        out.append(f'<text x="{lx + 12}" y="{y + 4}">{escape(label)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def panel_svgs(report) -> dict[str, str]:
    """Both panel figures: N_j against h, and M against H with mean-M lines."""
    ids = [r.author_id for r in report.rows]
    h_nj = scatter_svg(
        [(r.h, r.n_j, r.group) for r in report.rows],
        title="Distinct journals against h-index",
        xlabel="h", ylabel="N_j", ids=ids,
    )
    big = scatter_svg(
        [(r.big_h, r.big_m, r.group) for r in report.rows],
        title="Scope M against impact H",
        xlabel="H", ylabel="M", ids=ids,
        hlines={label: g.mean_m for label, g in report.groups.items()},
    )
    return {"h_nj": h_nj, "H_M": big}
