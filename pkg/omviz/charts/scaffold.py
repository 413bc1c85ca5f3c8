"""
Stimulus scaffold shared by all five designs.

Canvas margins, sample x positions, y gridlines (decade lines plus one fainter
mantissa-5 line per decade), y tick labels on the decade lines only, and the
A/B markers drawn outside the plot: a short stroke above and below the plot
with the letter over the upper stroke. Time labels are never drawn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from omviz.charts.svg import SvgDocument
from omviz.config.settings import RENDER_CONFIG
from omviz.contracts.types import ChartSpec, GridLine, MagnitudeRange

BAR_DESIGNS = frozenset({"ssb"})

LABEL_FONT = "font-family:Helvetica,Arial,sans-serif;font-size:11px"


@dataclass(frozen=True)
class PlotFrame:
    left: float
    top: float
    width: float
    height: float

    @property
    def right(self) -> float:
        return self.left + self.width

    @property
    def bottom(self) -> float:
        return self.top + self.height

    def y_px(self, unit_y: float) -> float:
        return self.bottom - unit_y * self.height

    @classmethod
    def for_canvas(cls, width_px: int, height_px: int) -> "PlotFrame":
        # margins scale with the canvas; 972x350 gives 64/151 px left/right, 36/24 px top/bottom
        left = round(width_px * 0.066)
        right = round(width_px * 0.155)
        top = round(height_px * 0.103)
        bottom = round(height_px * 0.069)
        return cls(left=left, top=top, width=max(width_px - left - right, 1), height=max(height_px - top - bottom, 1))


@dataclass
class ChartCanvas:
    doc: SvgDocument
    frame: PlotFrame
    spec: ChartSpec

    @classmethod
    def create(cls, spec: ChartSpec) -> "ChartCanvas":
        doc = SvgDocument(spec.width_px, spec.height_px)
        doc.rect(doc.root, 0, 0, spec.width_px, spec.height_px, "#ffffff")
        return cls(doc=doc, frame=PlotFrame.for_canvas(spec.width_px, spec.height_px), spec=spec)


def sample_xs(n: int, frame: PlotFrame, design: str) -> np.ndarray:
    """x pixel per sample: uniform i/(n-1) for line designs, slot centers for bars."""
    if design in BAR_DESIGNS:
        return frame.left + (np.arange(n) + 0.5) * frame.width / n
    if n == 1:
        return np.array([frame.left + frame.width / 2.0])
    return frame.left + np.arange(n) / (n - 1) * frame.width


def format_value(v: float) -> str:
    if v >= 1 and float(v).is_integer():
        return f"{int(v)}"
    return f"{v:g}"


def decade_label(k: int) -> str:
    return format_value(10.0 ** k)


def grid_positions(value_range: MagnitudeRange, design: str,
                   horizon_band_height: Optional[float] = None) -> List[GridLine]:
    """Gridlines in unit height; labels appear on major lines only."""
    d = value_range.decades
    lines: List[GridLine] = []
    if design in ("oml", "log_line"):
        minor_offset = 4.0 / 9.0 if design == "oml" else math.log10(5.0)
        for k in range(d + 1):
            lines.append(GridLine(y=k / d, emphasis="major", label=decade_label(value_range.e_min + k)))
        for k in range(d):
            lines.append(GridLine(y=(k + minor_offset) / d, emphasis="minor"))
    elif design == "ssb":
        lines.append(GridLine(y=0.0, emphasis="major", label="0"))
        for k in range(d):
            lines.append(GridLine(y=(k + 1) / d, emphasis="major", label=decade_label(value_range.e_min + k + 1)))
        for k in range(d):
            lines.append(GridLine(y=(k + 0.5) / d, emphasis="minor"))
    elif design == "omh":
        # every band shares one decade-local mantissa axis
        lines.append(GridLine(y=0.0, emphasis="major", label="1"))
        lines.append(GridLine(y=1.0, emphasis="major", label="10"))
        lines.append(GridLine(y=4.0 / 9.0, emphasis="minor"))
    elif design == "horizon":
        top_label = format_value(horizon_band_height) if horizon_band_height is not None else None
        lines.append(GridLine(y=0.0, emphasis="major", label="0"))
        lines.append(GridLine(y=1.0, emphasis="major", label=top_label))
        lines.append(GridLine(y=0.5, emphasis="minor"))
    else:
        raise ValueError(f"unknown design: {design}")
    return lines


def draw_grid(canvas: ChartCanvas, lines: List[GridLine]) -> None:
    doc, frame = canvas.doc, canvas.frame
    layer = doc.layer("grid")
    color = RENDER_CONFIG["grid_color"]
    for gl in lines:
        y = frame.y_px(gl.y)
        opacity = "1" if gl.emphasis == "major" else str(RENDER_CONFIG["minor_grid_opacity"])
        doc.line(layer, frame.left, y, frame.right, y, color,
                 stroke_width="1", stroke_opacity=opacity, class_=gl.emphasis)
        if gl.emphasis == "major":
            doc.line(layer, frame.left - 4, y, frame.left, y, color, stroke_width="1", class_="tick")
            if gl.label is not None:
                doc.text(layer, frame.left - 7, y + 4, gl.label,
                         style=LABEL_FONT, text_anchor="end", class_="tick-label")


def draw_markers(canvas: ChartCanvas, n: int) -> None:
    """Two strokes and one letter per marker, all outside the plot area."""
    spec, doc, frame = canvas.spec, canvas.doc, canvas.frame
    if not spec.markers:
        return
    layer = doc.layer("markers")
    xs = sample_xs(n, frame, spec.design)
    gap = RENDER_CONFIG["marker_gap_px"]
    stroke = RENDER_CONFIG["marker_stroke_px"]
    for marker in spec.markers:
        x = float(xs[marker.index])
        doc.line(layer, x, frame.top - gap - stroke, x, frame.top - gap, "#000000", stroke_width="1.5")
        doc.line(layer, x, frame.bottom + gap, x, frame.bottom + gap + stroke, "#000000", stroke_width="1.5")
        doc.text(layer, x, frame.top - gap - stroke - 3, marker.label,
                 style="font-family:Helvetica,Arial,sans-serif;font-size:12px;font-weight:bold",
                 text_anchor="middle")


def legend_origin(canvas: ChartCanvas) -> tuple[float, float]:
    return canvas.frame.right + 20, canvas.frame.top
