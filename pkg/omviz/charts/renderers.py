"""
Design renderers: log-line, OML, classic horizon, OMH and scale-stack bars.

Each renderer draws its data layer (``data`` or ``bands``) and, for the
colored designs, its ``legend`` onto a ChartCanvas and returns the names of
the layers it produced. The fraction kernels are pure numpy so they can be
checked against brute-force recomputation without parsing SVG.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np

from omviz.charts.scaffold import LABEL_FONT, ChartCanvas, format_value, legend_origin, sample_xs
from omviz.color.omc import horizon_band_color, omc_color, omh_band_color
from omviz.config.settings import RENDER_CONFIG
from omviz.contracts.types import ChartSpec, MagnitudeRange, MagnitudeValue, OmcPalette, Series
from omviz.magnitude.core import (
    decompose_array_in_range,
    log_y_array,
    piecewise_y_array,
    require_in_range,
)

SWATCH_W = 16
SWATCH_H = 14
LEGEND_ROW = 20


# ─────────────────────────────────────────────────────────────
# Fraction kernels
# ─────────────────────────────────────────────────────────────

def omh_band_fractions(values, value_range: MagnitudeRange) -> np.ndarray:
    """(n, decades): bands below the value's decade full, own band (m-1)/9, above empty."""
    v = require_in_range(values, value_range)
    m, e = decompose_array_in_range(v, value_range)
    own = (e - value_range.e_min)[:, None]
    bands = np.arange(value_range.decades)[None, :]
    partial = ((m - 1.0) / 9.0)[:, None]
    return np.where(bands < own, 1.0, np.where(bands == own, partial, 0.0))


def horizon_band_fractions(values, n_bands: int, top: Optional[float] = None) -> np.ndarray:
    """(n, n_bands) fill fractions on a linear [0, top] scale cut into equal bands."""
    v = np.asarray(values, dtype=float)
    scale_top = float(np.max(v)) if top is None else float(top)
    h = scale_top / n_bands
    offsets = np.arange(n_bands)[None, :] * h
    return np.clip((v[:, None] - offsets) / h, 0.0, 1.0)


def ssb_scale_tops(value_range: MagnitudeRange) -> np.ndarray:
    return np.power(10.0, np.arange(value_range.e_min + 1, value_range.e_max + 2))


def ssb_fractions(values, value_range: MagnitudeRange) -> np.ndarray:
    """(n, decades) bar heights v/top on every scale whose top is >= v, NaN elsewhere."""
    v = require_in_range(values, value_range)
    tops = ssb_scale_tops(value_range)[None, :]
    fits = v[:, None] <= tops * (1 + 1e-12)
    return np.where(fits, np.minimum(v[:, None] / tops, 1.0), np.nan)


# ─────────────────────────────────────────────────────────────
# Geometry helpers
# ─────────────────────────────────────────────────────────────

def _line_xs(n: int, canvas: ChartCanvas) -> np.ndarray:
    xs = sample_xs(n, canvas.frame, canvas.spec.design)
    if n == 1:
        # a single sample spans the full width
        return np.array([canvas.frame.left, canvas.frame.right])
    return xs


def _stretch(values: np.ndarray) -> np.ndarray:
    return np.repeat(values, 2, axis=0) if len(values) == 1 else values


def _area(xs: np.ndarray, ys_px: np.ndarray, baseline: float) -> List[Tuple[float, float]]:
    pts = [(float(xs[0]), baseline)]
    pts.extend((float(x), float(y)) for x, y in zip(xs, ys_px))
    pts.append((float(xs[-1]), baseline))
    return pts


def _band_polygons(canvas: ChartCanvas, layer, fractions: np.ndarray, fills: Sequence[str]) -> None:
    frame = canvas.frame
    xs = _line_xs(len(fractions), canvas)
    fr = _stretch(fractions)
    for b, fill in enumerate(fills):
        ys = frame.bottom - fr[:, b] * frame.height
        canvas.doc.polygon(layer, _area(xs, ys, frame.bottom), fill, class_=f"band-{b}")


def _legend_row(canvas: ChartCanvas, layer, row: int, fill: str, label: str) -> None:
    x0, y0 = legend_origin(canvas)
    y = y0 + row * LEGEND_ROW
    canvas.doc.rect(layer, x0, y, SWATCH_W, SWATCH_H, fill)
    canvas.doc.text(layer, x0 + SWATCH_W + 6, y + SWATCH_H - 3, label, style=LABEL_FONT)


def _decade_interval(value_range: MagnitudeRange, k: int) -> str:
    e = value_range.e_min + k
    return f"{format_value(10.0 ** e)}–{format_value(10.0 ** (e + 1))}"


# ─────────────────────────────────────────────────────────────
# Renderers
# ─────────────────────────────────────────────────────────────

def render_log_line(series: Series, spec: ChartSpec, palette: OmcPalette, canvas: ChartCanvas) -> List[str]:
    ys = _stretch(log_y_array(series.values, spec.value_range))
    xs = _line_xs(len(series), canvas)
    layer = canvas.doc.layer("data")
    canvas.doc.polyline(layer, zip(xs, canvas.frame.bottom - ys * canvas.frame.height),
                        RENDER_CONFIG["line_color"], stroke_width="1.5")
    return ["data"]


def render_oml(series: Series, spec: ChartSpec, palette: OmcPalette, canvas: ChartCanvas) -> List[str]:
    frame, doc = canvas.frame, canvas.doc
    value_range = spec.value_range
    ys = frame.bottom - _stretch(piecewise_y_array(series.values, value_range)) * frame.height
    m, e = decompose_array_in_range(series.values, value_range)
    colors = [
        omc_color(MagnitudeValue.model_construct(value=v, mantissa=float(mi), exponent=int(ei)), palette, value_range).hex
        for v, mi, ei in zip(series.values, m, e)
    ]
    xs = _line_xs(len(series), canvas)
    layer = doc.layer("data")
    fill = doc.element(layer, "g", class_="fill")
    if len(series) == 1:
        doc.polygon(fill, _area(xs, ys, frame.bottom), colors[0])
    else:
        # one trapezoid per sample, colored by the sample at its left edge
        for i in range(len(series) - 1):
            pts = [(float(xs[i]), frame.bottom), (float(xs[i]), float(ys[i])),
                   (float(xs[i + 1]), float(ys[i + 1])), (float(xs[i + 1]), frame.bottom)]
            doc.polygon(fill, pts, colors[i], class_="slab")
    doc.polyline(layer, zip(xs, ys), RENDER_CONFIG["line_color"], stroke_width="1.5")

    if not spec.show_legend:
        return ["data"]
    legend = doc.layer("legend")
    x0, y0 = legend_origin(canvas)
    cell = SWATCH_W / 2
    for row, k in enumerate(reversed(range(value_range.decades))):
        e_k = value_range.e_min + k
        y = y0 + row * LEGEND_ROW
        for j, mantissa in enumerate(range(1, 10)):
            color = omc_color(MagnitudeValue.model_construct(value=mantissa * 10.0 ** e_k, mantissa=float(mantissa),
                                                             exponent=e_k), palette, value_range)
            doc.rect(legend, x0 + j * cell, y, cell, SWATCH_H, color.hex)
        doc.text(legend, x0 + 9 * cell + 6, y + SWATCH_H - 3, _decade_interval(value_range, k), style=LABEL_FONT)
    return ["data", "legend"]


def render_horizon(series: Series, spec: ChartSpec, palette: OmcPalette, canvas: ChartCanvas) -> List[str]:
    top = float(np.max(series.values))
    fractions = horizon_band_fractions(series.values, spec.n_bands, top)
    fills = [horizon_band_color(b, spec.n_bands, palette.horizon_hue).hex for b in range(spec.n_bands)]
    _band_polygons(canvas, canvas.doc.layer("bands"), fractions, fills)

    if not spec.show_legend:
        return ["bands"]
    legend = canvas.doc.layer("legend")
    h = top / spec.n_bands
    for row, b in enumerate(reversed(range(spec.n_bands))):
        _legend_row(canvas, legend, row, fills[b], f"{format_value(round(b * h, 6))}–{format_value(round((b + 1) * h, 6))}")
    return ["bands", "legend"]


def render_omh(series: Series, spec: ChartSpec, palette: OmcPalette, canvas: ChartCanvas) -> List[str]:
    value_range = spec.value_range
    fractions = omh_band_fractions(series.values, value_range)
    # ascending layering: higher decades painted over lower ones
    fills = [omh_band_color(b, palette).hex for b in range(value_range.decades)]
    _band_polygons(canvas, canvas.doc.layer("bands"), fractions, fills)

    if not spec.show_legend:
        return ["bands"]
    legend = canvas.doc.layer("legend")
    for row, b in enumerate(reversed(range(value_range.decades))):
        _legend_row(canvas, legend, row, fills[b], _decade_interval(value_range, b))
    return ["bands", "legend"]


def render_ssb(series: Series, spec: ChartSpec, palette: OmcPalette, canvas: ChartCanvas) -> List[str]:
    frame, doc = canvas.frame, canvas.doc
    value_range = spec.value_range
    fractions = ssb_fractions(series.values, value_range)
    n, d = fractions.shape
    slot = frame.width / n
    bar_w = max(slot - 1.0, 0.5)
    sub_h = frame.height / d
    layer = doc.layer("data")
    for k in range(d):
        sub = doc.element(layer, "g", class_=f"scale-{k}")
        base = frame.bottom - k * sub_h
        for i in range(n):
            f = fractions[i, k]
            if np.isnan(f):
                continue
            doc.rect(sub, frame.left + i * slot, base - f * sub_h, bar_w, f * sub_h, RENDER_CONFIG["bar_color"])
    return ["data"]
