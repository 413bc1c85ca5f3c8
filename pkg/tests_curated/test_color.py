import json

import pytest
from pydantic import ValidationError

from omviz.color.omc import (
    DEFAULT_PALETTE,
    check_palette_covers,
    horizon_band_color,
    load_palette,
    omc_color,
    omh_band_color,
)
from omviz.contracts.errors import DomainError, RangeError
from omviz.contracts.types import HslColor, MagnitudeRange, OmcPalette
from omviz.magnitude.core import decompose, decompose_in_range

RANGE = MagnitudeRange()


def test_hsl_to_hex():
    assert HslColor(hue=0, saturation=1.0, lightness=0.5).hex == "#ff0000"
    assert HslColor(hue=120, saturation=1.0, lightness=0.5).hex == "#00ff00"
    assert HslColor(hue=0, saturation=0.0, lightness=1.0).hex == "#ffffff"


def test_hue_follows_exponent():
    hues = [omc_color(decompose(3 * 10 ** e), DEFAULT_PALETTE, RANGE).hue for e in range(5)]
    assert hues == DEFAULT_PALETTE.hues
    assert len(set(hues)) == 5


def test_tone_darkens_with_mantissa():
    lightness = [omc_color(decompose(m * 100), DEFAULT_PALETTE, RANGE).lightness for m in range(1, 10)]
    assert lightness[0] == pytest.approx(DEFAULT_PALETTE.tone_range[0])
    assert all(a > b for a, b in zip(lightness, lightness[1:]))


def test_range_top_uses_darkest_tone_of_last_decade():
    color = omc_color(decompose_in_range(100000, RANGE), DEFAULT_PALETTE, RANGE)
    assert color.hue == DEFAULT_PALETTE.hues[4]
    assert color.lightness == pytest.approx(DEFAULT_PALETTE.tone_range[1])


def test_exponent_outside_palette_is_a_range_error():
    with pytest.raises(RangeError):
        omc_color(decompose(500000), DEFAULT_PALETTE, RANGE)
    with pytest.raises(RangeError):
        omc_color(decompose(0.5), DEFAULT_PALETTE, RANGE)


def test_omh_band_saturation_grows_with_magnitude():
    sats = [omh_band_color(b, DEFAULT_PALETTE).saturation for b in range(5)]
    assert all(a < b for a, b in zip(sats, sats[1:]))
    with pytest.raises(RangeError):
        omh_band_color(5, DEFAULT_PALETTE)


def test_horizon_ramp_is_single_hue_light_to_dark():
    colors = [horizon_band_color(b, 3) for b in range(3)]
    assert {c.hue for c in colors} == {DEFAULT_PALETTE.horizon_hue}
    assert colors[0].lightness > colors[1].lightness > colors[2].lightness
    with pytest.raises(RangeError):
        horizon_band_color(3, 3)


def test_palette_validation():
    with pytest.raises(ValidationError):
        OmcPalette(hues=[10.0, 370.0])
    with pytest.raises(ValidationError):
        OmcPalette(saturation_ramp=[0.5, 0.4])
    with pytest.raises(ValidationError):
        OmcPalette(tone_range=(0.2, 0.8))


def test_palette_must_cover_every_decade():
    small = OmcPalette(hues=[0.0, 120.0, 240.0], saturation_ramp=[0.3, 0.6, 0.9])
    check_palette_covers(small, MagnitudeRange(e_min=0, e_max=2))
    with pytest.raises(RangeError):
        check_palette_covers(small, RANGE)


def test_load_palette(tmp_path):
    path = tmp_path / "palette.json"
    path.write_text(json.dumps({"hues": [0, 60, 120, 180, 240], "horizon_hue": 200}))
    palette = load_palette(path)
    assert palette.hues == [0.0, 60.0, 120.0, 180.0, 240.0]
    assert palette.horizon_hue == 200.0

    with pytest.raises(DomainError):
        load_palette(tmp_path / "missing.json")
    path.write_text("{\"hues\": []}")
    with pytest.raises(DomainError):
        load_palette(path)
