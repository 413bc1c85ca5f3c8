"""
Box-plot statistics and outlier-adjusted means.

Quartiles use linear interpolation between order statistics (numpy's
"linear" method). Whiskers reach the furthest datum within 1.5 x IQR of the
box; anything beyond is an outlier and is excluded from adjusted means.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy import stats

from omviz.contracts.errors import DomainError
from omviz.contracts.types import BoxStats, MeanInterval

WHISKER_IQR = 1.5


def _as_array(xs: Sequence[float]) -> np.ndarray:
    arr = np.asarray(xs, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError("statistics need at least one observation")
    if not np.all(np.isfinite(arr)):
        raise DomainError("observations must be finite")
    return arr


def _fences(arr: np.ndarray):
    q1, median, q3 = np.quantile(arr, [0.25, 0.5, 0.75], method="linear")
    iqr = q3 - q1
    return float(q1), float(median), float(q3), q1 - WHISKER_IQR * iqr, q3 + WHISKER_IQR * iqr


def box_stats(xs: Sequence[float]) -> BoxStats:
    arr = _as_array(xs)
    q1, median, q3, lo, hi = _fences(arr)
    inside = arr[(arr >= lo) & (arr <= hi)]
    outliers = np.sort(arr[(arr < lo) | (arr > hi)])
    return BoxStats(
        q1=q1, median=median, q3=q3,
        whisker_low=float(inside.min()), whisker_high=float(inside.max()),
        outliers=[float(v) for v in outliers],
    )


def adjusted_mean(xs: Sequence[float]) -> float:
    arr = _as_array(xs)
    _, _, _, lo, hi = _fences(arr)
    return float(arr[(arr >= lo) & (arr <= hi)].mean())


def mean_ci(xs: Sequence[float], level: float = 0.95) -> MeanInterval:
    """Mean with a Student-t interval; degenerate (zero width) for n = 1 or constant data."""
    arr = _as_array(xs)
    mean = float(arr.mean())
    n = int(arr.size)
    sd = float(arr.std(ddof=1)) if n > 1 else 0.0
    if sd == 0.0:
        return MeanInterval(mean=mean, low=mean, high=mean, n=n)
    half = float(stats.t.ppf(0.5 + level / 2.0, n - 1)) * sd / math.sqrt(n)
    return MeanInterval(mean=mean, low=mean - half, high=mean + half, n=n)
