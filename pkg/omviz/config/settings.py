"""
Runtime configuration for rendering, study construction and analysis.

Values come from the environment (optionally a local .env file) and fall back
to the defaults used for the published stimuli: 972x350 px charts, three
classic horizon bands, a 0.05 mantissa tolerance for grid membership, and
alpha 0.05 with a Bonferroni factor of 10.
"""

from __future__ import annotations
import os

from dotenv import load_dotenv

load_dotenv(override=False)


def _env(key: str, default: str | int | float | bool):
    val = os.getenv(key)
    if val is None:
        return default
    if isinstance(default, bool):
        return val.strip().lower() in {"1", "true", "yes", "on"}
    if isinstance(default, int):
        try:
            return int(val)
        except ValueError:
            return default
    if isinstance(default, float):
        try:
            return float(val)
        except ValueError:
            return default
    return val


OUTPUT_DIR: str = _env("OMVIZ_OUTPUT_DIR", "out")
LOG_LEVEL: str = str(_env("OMVIZ_LOG_LEVEL", "INFO")).upper()

RENDER_CONFIG = {
    "width_px": _env("OMVIZ_WIDTH_PX", 972),
    "height_px": _env("OMVIZ_HEIGHT_PX", 350),
    # mantissa-5 lines are drawn fainter than the decade lines
    "minor_grid_opacity": _env("OMVIZ_MINOR_GRID_OPACITY", 0.35),
    "horizon_bands": 3,
    "marker_stroke_px": 10,
    "marker_gap_px": 4,
    "line_color": "#1f1f1f",
    "bar_color": "#5a5a5a",
    "grid_color": "#8c8c8c",
}

STUDY_CONFIG = {
    "grid_tolerance": _env("OMVIZ_GRID_TOLERANCE", 0.05),
    "max_regenerations": _env("OMVIZ_MAX_REGENERATIONS", 50),
    "min_marker_separation": _env("OMVIZ_MIN_MARKER_SEPARATION", 5),
    "series_length": 100,
}

ANALYSIS_CONFIG = {
    "alpha": _env("OMVIZ_ALPHA", 0.05),
    "bonferroni_factor": _env("OMVIZ_BONFERRONI", 10),
}
