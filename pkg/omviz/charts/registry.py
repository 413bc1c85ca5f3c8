# omviz/charts/registry.py   # Design registry and the render entrypoint

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from omviz.charts.renderers import (
    render_horizon,
    render_log_line,
    render_oml,
    render_omh,
    render_ssb,
)
from omviz.charts.scaffold import ChartCanvas, draw_grid, draw_markers, grid_positions
from omviz.color.omc import DEFAULT_PALETTE, check_palette_covers
from omviz.contracts.errors import RangeError, UsageError
from omviz.contracts.types import COLORED_DESIGNS, ChartSpec, OmcPalette, RenderedChart, Series
from omviz.magnitude.core import require_in_range
from omviz.utils.logging import StructuredLogger

Renderer = Callable[[Series, ChartSpec, OmcPalette, ChartCanvas], List[str]]


@dataclass(frozen=True)
class DesignSpec:
    name: str
    renderer: Renderer
    cli_name: str

    @property
    def colored(self) -> bool:
        return self.name in COLORED_DESIGNS


DESIGN_REGISTRY: Dict[str, DesignSpec] = {
    "log_line": DesignSpec(name="log_line", renderer=render_log_line, cli_name="log"),
    "oml": DesignSpec(name="oml", renderer=render_oml, cli_name="oml"),
    "horizon": DesignSpec(name="horizon", renderer=render_horizon, cli_name="horizon"),
    "omh": DesignSpec(name="omh", renderer=render_omh, cli_name="omh"),
    "ssb": DesignSpec(name="ssb", renderer=render_ssb, cli_name="ssb"),
}

CLI_DESIGNS: Dict[str, str] = {spec.cli_name: name for name, spec in DESIGN_REGISTRY.items()}

log = StructuredLogger("charts")


def get_design(name: str) -> DesignSpec:
    design = DESIGN_REGISTRY.get(name) or DESIGN_REGISTRY.get(CLI_DESIGNS.get(name, ""))
    if design is None:
        raise UsageError(f"unknown design: {name!r} (expected one of {', '.join(CLI_DESIGNS)})")
    return design


def render(series: Series, spec: ChartSpec, palette: Optional[OmcPalette] = None) -> RenderedChart:
    """Render one chart to a deterministic SVG document."""
    palette = palette or DEFAULT_PALETTE
    design = get_design(spec.design)
    if not series.values:
        raise RangeError("cannot render an empty series")
    values = require_in_range(series.values, spec.value_range)
    bad = [m for m in spec.markers if m.index >= len(values)]
    if bad:
        raise UsageError(f"marker {bad[0].label} index {bad[0].index} beyond series length {len(values)}")
    if design.colored and design.name != "horizon":
        check_palette_covers(palette, spec.value_range)

    canvas = ChartCanvas.create(spec)
    layers = design.renderer(series, spec, palette, canvas)

    band_height = float(values.max()) / spec.n_bands if design.name == "horizon" else None
    draw_grid(canvas, grid_positions(spec.value_range, design.name, band_height))
    draw_markers(canvas, len(values))

    chart = RenderedChart(document=canvas.doc.tostring(), layers=canvas.doc.layer_names)
    log.debug("chart_rendered", design=design.name, samples=len(values),
              layers=layers, digest=chart.digest[:12])
    return chart
