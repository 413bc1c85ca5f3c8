"""
Mantissa/exponent decomposition and the two y-axis scales shared by renderers.

Scalar functions validate and return pydantic values; the ``*_array`` variants
are the numpy kernels the renderers and bulk checks run on.
"""

from __future__ import annotations

import math
import numbers
from typing import Tuple

import numpy as np

from omviz.contracts.errors import DomainError, RangeError
from omviz.contracts.types import MagnitudeRange, MagnitudeValue

# |log10 v - round(log10 v)| below this snaps to the decade edge
BOUNDARY_SNAP = 1e-9


def split(v: float) -> Tuple[float, int]:
    """Canonical (mantissa, exponent) with 1 <= mantissa < 10, no validation."""
    lg = math.log10(v)
    nearest = round(lg)
    if abs(lg - nearest) < BOUNDARY_SNAP:
        e = int(nearest)
    else:
        e = math.floor(lg)
    m = v / 10.0 ** e
    # snapping can land a hair below the edge; borrow instead of clamping
    if m < 1.0:
        m, e = m * 10.0, e - 1
    elif m >= 10.0:
        m, e = m / 10.0, e + 1
    return m, e


def _require_positive(v: float) -> None:
    if not isinstance(v, numbers.Real) or isinstance(v, bool):
        raise DomainError(f"expected a real number, got {v!r}")
    if not math.isfinite(v) or v <= 0:
        raise DomainError(f"value must be positive and finite, got {v!r}")


def decompose(v: float) -> MagnitudeValue:
    _require_positive(v)
    m, e = split(float(v))
    return MagnitudeValue.model_construct(value=float(v), mantissa=m, exponent=e)


def decompose_in_range(v: float, value_range: MagnitudeRange) -> MagnitudeValue:
    """Like decompose, but the range top closes the last decade as m=10, e=e_max."""
    mv = decompose(v)
    if mv.exponent == value_range.e_max + 1 and value_range.contains(mv.value):
        return MagnitudeValue.model_construct(value=mv.value, mantissa=10.0, exponent=value_range.e_max)
    return mv


def compose(m: float, e: int) -> float:
    if not (1.0 <= m <= 10.0):
        raise DomainError(f"mantissa must lie in [1, 10], got {m!r}")
    if int(e) != e:
        raise DomainError(f"exponent must be an integer, got {e!r}")
    return m * 10.0 ** int(e)


def _check_in_range(v: float, value_range: MagnitudeRange) -> None:
    _require_positive(v)
    if not value_range.contains(v):
        raise RangeError(
            f"value {v!r} outside [{value_range.lower:g}, {value_range.upper:g}]"
        )


def piecewise_y(v: float, value_range: MagnitudeRange) -> float:
    """Unit height on an axis that is linear inside each decade."""
    _check_in_range(v, value_range)
    m, e = split(float(v))
    y = (e - value_range.e_min + (m - 1.0) / 9.0) / value_range.decades
    return min(max(y, 0.0), 1.0)


def log_y(v: float, value_range: MagnitudeRange) -> float:
    _check_in_range(v, value_range)
    y = (math.log10(v) - value_range.e_min) / value_range.decades
    return min(max(y, 0.0), 1.0)


# ─────────────────────────────────────────────────────────────
# numpy kernels
# ─────────────────────────────────────────────────────────────

def require_in_range(values, value_range: MagnitudeRange) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    if v.size and (not np.all(np.isfinite(v)) or np.any(v <= 0)):
        raise DomainError("values must be positive and finite")
    lo = value_range.lower * (1 - 1e-12)
    hi = value_range.upper * (1 + 1e-12)
    outside = np.flatnonzero((v < lo) | (v > hi))
    if outside.size:
        raise RangeError(
            f"{outside.size} value(s) outside [{value_range.lower:g}, {value_range.upper:g}], "
            f"first at index {int(outside[0])}"
        )
    return v


def decompose_array(values) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized ``split``: returns (mantissas, exponents)."""
    v = np.asarray(values, dtype=float)
    lg = np.log10(v)
    nearest = np.rint(lg)
    e = np.where(np.abs(lg - nearest) < BOUNDARY_SNAP, nearest, np.floor(lg)).astype(np.int64)
    m = v / np.power(10.0, e)
    borrow = m < 1.0
    m = np.where(borrow, m * 10.0, m)
    e = np.where(borrow, e - 1, e)
    carry = m >= 10.0
    m = np.where(carry, m / 10.0, m)
    e = np.where(carry, e + 1, e)
    return m, e


def decompose_array_in_range(values, value_range: MagnitudeRange) -> Tuple[np.ndarray, np.ndarray]:
    v = np.asarray(values, dtype=float)
    m, e = decompose_array(v)
    top = (e == value_range.e_max + 1) & (v <= value_range.upper * (1 + 1e-12))
    return np.where(top, 10.0, m), np.where(top, value_range.e_max, e)


def piecewise_y_array(values, value_range: MagnitudeRange) -> np.ndarray:
    v = require_in_range(values, value_range)
    m, e = decompose_array(v)
    y = (e - value_range.e_min + (m - 1.0) / 9.0) / value_range.decades
    return np.clip(y, 0.0, 1.0)


def log_y_array(values, value_range: MagnitudeRange) -> np.ndarray:
    v = require_in_range(values, value_range)
    y = (np.log10(v) - value_range.e_min) / value_range.decades
    return np.clip(y, 0.0, 1.0)
