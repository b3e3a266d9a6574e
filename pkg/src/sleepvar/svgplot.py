"""Dependency-free SVG rendering of line panels, stem plots, and band plots.

The emitted documents are deliberately plain (polylines, polygons, text)
and contain nothing nondeterministic, so identical inputs produce
byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .irf import IrfResult
from .stationarity import Decomposition, PacfResult

PANEL_W = 320
PANEL_H = 180
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 46, 10, 22, 26

LINE_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b")
BAND_COLOR = "#9ecae1"
GUIDE_COLOR = "#999999"


@dataclass
class Panel:
    title: str
    lines: list[tuple[np.ndarray, np.ndarray]] = field(default_factory=list)
    band: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None  # x, lo, hi
    stems: tuple[np.ndarray, np.ndarray] | None = None
    hlines: tuple[float, ...] = ()


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _data_ranges(panel: Panel) -> tuple[float, float, float, float]:
    xs, ys = [], []
    for x, y in panel.lines:
        xs.append(x)
        ys.append(y)
    if panel.band is not None:
        xs.append(panel.band[0])
        ys.extend([panel.band[1], panel.band[2]])
    if panel.stems is not None:
        xs.append(panel.stems[0])
        ys.append(panel.stems[1])
        ys.append(np.zeros(1))
    for h in panel.hlines:
        ys.append(np.array([h]))
    x_all = np.concatenate([np.asarray(v, dtype=float).ravel() for v in xs])
    y_all = np.concatenate([np.asarray(v, dtype=float).ravel() for v in ys])
    y_all = y_all[~np.isnan(y_all)]
    x0, x1 = float(x_all.min()), float(x_all.max())
    y0, y1 = (float(y_all.min()), float(y_all.max())) if y_all.size else (0.0, 1.0)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 1.0, y1 + 1.0
    pad = 0.05 * (y1 - y0)
    return x0, x1, y0 - pad, y1 + pad


def _render_panel(panel: Panel, ox: float, oy: float, out: list[str]) -> None:
    x0, x1, y0, y1 = _data_ranges(panel)
    px0, px1 = ox + MARGIN_L, ox + PANEL_W - MARGIN_R
    py0, py1 = oy + PANEL_H - MARGIN_B, oy + MARGIN_T  # y axis points up

    def sx(x):
        return px0 + (np.asarray(x, dtype=float) - x0) / (x1 - x0) * (px1 - px0)

    def sy(y):
        return py0 + (np.asarray(y, dtype=float) - y0) / (y1 - y0) * (py1 - py0)

    out.append(
        f'<text x="{_fmt(ox + MARGIN_L)}" y="{_fmt(oy + 14)}" font-size="11" '
        f'font-family="sans-serif">{panel.title}</text>'
    )
    # axes
    out.append(
        f'<polyline fill="none" stroke="#333333" stroke-width="1" points="'
        f'{_fmt(px0)},{_fmt(py1)} {_fmt(px0)},{_fmt(py0)} {_fmt(px1)},{_fmt(py0)}"/>'
    )
    for val, x, y, anchor in (
        (y1, px0 - 3, py1 + 4, "end"),
        (y0, px0 - 3, py0, "end"),
        (x0, px0, py0 + 12, "middle"),
        (x1, px1, py0 + 12, "middle"),
    ):
        out.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="9" text-anchor="{anchor}" '
            f'font-family="sans-serif">{val:.4g}</text>'
        )

    if panel.band is not None:
        bx, lo, hi = panel.band
        keep = ~(np.isnan(lo) | np.isnan(hi))
        bx, lo, hi = bx[keep], lo[keep], hi[keep]
        pts = list(zip(sx(bx), sy(hi))) + list(zip(sx(bx)[::-1], sy(lo)[::-1]))
        poly = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in pts)
        out.append(f'<polygon fill="{BAND_COLOR}" fill-opacity="0.45" points="{poly}"/>')

    for h in panel.hlines:
        yy = _fmt(float(sy(h)))
        out.append(
            f'<line x1="{_fmt(px0)}" y1="{yy}" x2="{_fmt(px1)}" y2="{yy}" '
            f'stroke="{GUIDE_COLOR}" stroke-width="1" stroke-dasharray="4,3"/>'
        )

    if panel.stems is not None:
        stx, sty = panel.stems
        base = _fmt(float(sy(0.0)))
        for xv, yv in zip(sx(stx), sy(sty)):
            out.append(
                f'<line x1="{_fmt(xv)}" y1="{base}" x2="{_fmt(xv)}" y2="{_fmt(yv)}" '
                f'stroke="{LINE_COLORS[0]}" stroke-width="1.5"/>'
            )

    for c, (lx, ly) in enumerate(panel.lines):
        lx = np.asarray(lx, dtype=float)
        ly = np.asarray(ly, dtype=float)
        keep = ~np.isnan(ly)
        pts = " ".join(
            f"{_fmt(a)},{_fmt(b)}" for a, b in zip(sx(lx[keep]), sy(ly[keep]))
        )
        color = LINE_COLORS[c % len(LINE_COLORS)]
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.3" points="{pts}"/>')


def render_grid(panels: list[Panel], n_cols: int) -> str:
    """Lay panels out row-major in a grid and return the SVG document."""
    n_rows = (len(panels) + n_cols - 1) // n_cols
    width, height = n_cols * PANEL_W, n_rows * PANEL_H
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for idx, panel in enumerate(panels):
        _render_panel(panel, (idx % n_cols) * PANEL_W, (idx // n_cols) * PANEL_H, out)
    out.append("</svg>")
    return "\n".join(out) + "\n"


def decomposition_figure(observed: np.ndarray, dec: Decomposition) -> str:
    """Four stacked panels: observed, trend, seasonal, residual."""
    x = np.arange(observed.size, dtype=float)
    panels = [
        Panel("observed", lines=[(x, np.asarray(observed, dtype=float))]),
        Panel(f"trend (window {dec.period})", lines=[(x, dec.trend)]),
        Panel(f"seasonal (period {dec.period})", lines=[(x, dec.seasonal)]),
        Panel("residual", lines=[(x, dec.residual)], hlines=(0.0,)),
    ]
    return render_grid(panels, n_cols=1)


def pacf_figure(res: PacfResult) -> str:
    """Stem plot of partial autocorrelations with the white-noise band."""
    lags = np.arange(res.values.size, dtype=float)
    panel = Panel(
        "partial autocorrelation",
        stems=(lags, res.values),
        hlines=(res.band, 0.0, -res.band),
    )
    return render_grid([panel], n_cols=1)


def irf_figure(res: IrfResult) -> str:
    """K x K grid; the panel in row i, column j shows the response of
    variable i to an impulse in variable j, with shaded bands."""
    h = np.arange(res.horizon + 1, dtype=float)
    panels = []
    for i, response in enumerate(res.var_names):
        for j, impulse in enumerate(res.var_names):
            panels.append(
                Panel(
                    f"{impulse} &#8594; {response}",
                    lines=[(h, res.responses[:, i, j])],
                    band=(h, res.lower[:, i, j], res.upper[:, i, j]),
                    hlines=(0.0,),
                )
            )
    return render_grid(panels, n_cols=len(res.var_names))
