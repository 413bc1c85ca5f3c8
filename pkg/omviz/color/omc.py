"""
Order-of-magnitude color (OMC): exponent -> hue, mantissa -> tone of that hue.

Also provides the flat per-band colors of OMH (saturation grows with the
band's magnitude) and the single-hue ramp of the classic horizon graph.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from omviz.contracts.errors import DomainError, RangeError
from omviz.contracts.types import HslColor, MagnitudeRange, MagnitudeValue, OmcPalette

DEFAULT_PALETTE = OmcPalette()

# classic horizon ramp: (lightest, darkest) tone and saturation endpoints
HORIZON_LIGHTNESS = (0.80, 0.35)
HORIZON_SATURATION = (0.35, 0.85)


def _lerp(a: float, b: float, t: float) -> float:
    return a + (b - a) * t


def omc_color(mv: MagnitudeValue, palette: OmcPalette, value_range: MagnitudeRange) -> HslColor:
    """Color of a decomposed value; m=1 is the lightest tone, m->10 the darkest."""
    index = mv.exponent - value_range.e_min
    if not (0 <= index < value_range.decades) or index >= len(palette.hues):
        raise RangeError(
            f"exponent {mv.exponent} outside palette for decades {value_range.e_min}..{value_range.e_max}"
        )
    lightest, darkest = palette.tone_range
    t = min(max((mv.mantissa - 1.0) / 9.0, 0.0), 1.0)
    return HslColor(
        hue=palette.hues[index],
        saturation=palette.omc_saturation,
        lightness=_lerp(lightest, darkest, t),
    )


def omh_band_color(band_index: int, palette: OmcPalette) -> HslColor:
    """Flat color of one OMH band; the higher the decade, the more saturated."""
    n = min(len(palette.hues), len(palette.saturation_ramp))
    if not (0 <= band_index < n):
        raise RangeError(f"band {band_index} outside palette with {n} band(s)")
    lightest, darkest = palette.tone_range
    return HslColor(
        hue=palette.hues[band_index],
        saturation=palette.saturation_ramp[band_index],
        lightness=_lerp(lightest, darkest, 0.5),
    )


def horizon_band_color(band_index: int, n_bands: int, hue: float = DEFAULT_PALETTE.horizon_hue) -> HslColor:
    if n_bands < 1 or not (0 <= band_index < n_bands):
        raise RangeError(f"band {band_index} outside 0..{n_bands - 1}")
    t = band_index / (n_bands - 1) if n_bands > 1 else 1.0
    return HslColor(
        hue=hue,
        saturation=_lerp(*HORIZON_SATURATION, t),
        lightness=_lerp(*HORIZON_LIGHTNESS, t),
    )


def load_palette(path: Union[str, Path]) -> OmcPalette:
    """Read a palette override (JSON with hues, tone_range, saturation_ramp)."""
    p = Path(path)
    if not p.is_file():
        raise DomainError(f"palette file not found: {p}")
    try:
        return OmcPalette.model_validate_json(p.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise DomainError(f"invalid palette {p}: {exc}") from exc


def check_palette_covers(palette: OmcPalette, value_range: MagnitudeRange) -> None:
    if len(palette.hues) < value_range.decades or len(palette.saturation_ramp) < value_range.decades:
        raise RangeError(
            f"palette defines {len(palette.hues)} hue(s) / {len(palette.saturation_ramp)} saturation(s) "
            f"but the range spans {value_range.decades} decade(s)"
        )
