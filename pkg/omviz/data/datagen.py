"""
Seeded synthetic series.

Random walk: the first value is uniform in [10**a, 10**(a+1)] (a = e_min + 3,
i.e. [1000, 10000] for the default range), then each step moves the mantissa
by a uniform draw in [-2, 2]. A mantissa leaving [1, 10) carries into the
neighbouring decade through the value itself (9.5 + 1.0 at 10**e becomes
1.05 at 10**(e+1)); steps that leave the range are mirrored back across
the range edge. Stream layout: one PCG64 draw for the start, one per further step.

Trend series: exponents follow a fixed template per kind, mantissas are drawn
uniformly in [1, 10) (linear trends take their mantissas from the line).
"""

from __future__ import annotations

from typing import Literal

import numpy as np

from omviz.contracts.errors import DomainError, UsageError
from omviz.contracts.types import MagnitudeRange, Series
from omviz.magnitude.core import decompose_in_range, split

STEP_BOUND = 2.0
PERIOD = 25

DEFAULT_RANGE = MagnitudeRange()


def make_rng(seed: int) -> np.random.Generator:
    if seed < 0 or seed >= 2 ** 64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def _reflect(v: float, value_range: MagnitudeRange) -> float:
    lo, hi = value_range.lower, value_range.upper
    if v < lo:
        v = 2.0 * lo - v
    elif v > hi:
        v = 2.0 * hi - v
    return min(max(v, lo), hi)


def walk_step(v: float, delta: float, value_range: MagnitudeRange) -> float:
    """Move v's mantissa by delta within its decade; the range top counts as m=10 of e_max."""
    mv = decompose_in_range(v, value_range)
    stepped = mv.mantissa + delta
    if stepped <= 0:
        # the value cannot cross zero; take the step the other way
        stepped = mv.mantissa - delta
    return _reflect(stepped * 10.0 ** mv.exponent, value_range)


def random_walk(seed: int, n: int = 100, value_range: MagnitudeRange = DEFAULT_RANGE) -> Series:
    if n < 1:
        raise DomainError(f"walk length must be at least 1, got {n}")
    rng = make_rng(seed)
    start_decade = min(value_range.e_min + 3, value_range.e_max)
    v = float(rng.uniform(10.0 ** start_decade, 10.0 ** (start_decade + 1)))
    values = [v]
    steps = rng.uniform(-STEP_BOUND, STEP_BOUND, size=n - 1)
    for delta in steps:
        v = walk_step(v, float(delta), value_range)
        values.append(v)
    return Series(values=values, seed=seed, value_range=value_range, kind="walk")


def exponent_template(kind: str, n: int, value_range: MagnitudeRange) -> np.ndarray:
    t = np.arange(n)
    d = value_range.decades
    if kind == "exponential":
        # exponent rises linearly in equal runs
        return value_range.e_min + np.minimum((t * d) // n, d - 1)
    if kind == "periodic":
        wave = (1.0 - np.cos(2.0 * np.pi * t / PERIOD)) / 2.0
        return value_range.e_min + np.rint((d - 1) * wave).astype(np.int64)
    raise UsageError(f"no exponent template for trend kind {kind!r}")


def trend_series(kind: Literal["periodic", "linear", "exponential"], seed: int, n: int = 100,
                 value_range: MagnitudeRange = DEFAULT_RANGE) -> Series:
    if kind not in ("periodic", "linear", "exponential"):
        raise UsageError(f"unknown trend kind: {kind!r}")
    if n < 2:
        raise DomainError(f"trend series need at least 2 samples, got {n}")
    rng = make_rng(seed)
    if kind == "linear":
        start = rng.uniform(value_range.lower, 10.0 ** (value_range.e_min + 1))
        end = rng.uniform(10.0 ** value_range.e_max, value_range.upper)
        values = start + (end - start) * np.arange(n) / (n - 1)
    else:
        exponents = exponent_template(kind, n, value_range)
        mantissas = rng.uniform(1.0, 10.0, size=n)
        values = mantissas * np.power(10.0, exponents)
    return Series(values=[float(v) for v in values], seed=seed, value_range=value_range, kind=kind)


def _r_squared(x: np.ndarray, y: np.ndarray) -> float:
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = float(np.sum((y - y.mean()) ** 2))
    if total == 0.0:
        return 0.0
    return 1.0 - float(np.sum(residual ** 2)) / total


def classify_trend(values) -> str:
    """Name the trend by comparing a linear and a log-linear least-squares fit.

    Neither fit explaining at least half the variance means periodic.
    """
    y = np.asarray(values, dtype=float)
    t = np.arange(len(y), dtype=float)
    r2_linear = _r_squared(t, y)
    r2_log = _r_squared(t, np.log10(y))
    if max(r2_linear, r2_log) < 0.5:
        return "periodic"
    return "linear" if r2_linear >= r2_log else "exponential"


def exponents_of(values) -> list[int]:
    return [split(float(v))[1] for v in values]
