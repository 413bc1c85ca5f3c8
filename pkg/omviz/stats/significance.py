"""
Nonparametric significance tests.

Kruskal-Wallis and contingency p values come from the chi-squared survival
function below, so omnibus and confidence results share one reference.
Mann-Whitney p values are exact for small tie-free samples and otherwise use
scipy's normal approximation. Degenerate inputs (all observations equal)
short-circuit to "no evidence": statistic 0 and p = 1.
"""

from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np
from scipy import special, stats

from omviz.contracts.errors import DomainError
from omviz.contracts.types import AnalysisConfig

# smaller group size up to which tie-free Mann-Whitney p values are exact
EXACT_MAX_SIZE = 8


def chi2_sf(x: float, df: int) -> float:
    """P(X >= x) for X ~ chi2(df), as the regularized upper incomplete gamma Q(df/2, x/2)."""
    if x < 0 or not np.isfinite(x):
        raise DomainError(f"chi-squared statistic must be a finite value >= 0, got {x!r}")
    if int(df) != df or df < 1:
        raise DomainError(f"degrees of freedom must be a positive integer, got {df!r}")
    return float(special.gammaincc(df / 2.0, x / 2.0))


def _groups(groups: Sequence[Sequence[float]]) -> list:
    arrays = [np.asarray(g, dtype=float) for g in groups]
    if len(arrays) < 2:
        raise DomainError("at least two groups are required")
    if any(a.size == 0 for a in arrays):
        raise DomainError("every group must be non-empty")
    return arrays


def kruskal_wallis(groups: Sequence[Sequence[float]]) -> Tuple[float, float]:
    """Tie-corrected H and its chi-squared p value with k - 1 degrees of freedom."""
    arrays = _groups(groups)
    pooled = np.concatenate(arrays)
    if np.all(pooled == pooled[0]):
        return 0.0, 1.0
    h = max(float(stats.kruskal(*arrays).statistic), 0.0)
    return h, chi2_sf(h, len(arrays) - 1)


def mann_whitney(xs: Sequence[float], ys: Sequence[float]) -> Tuple[float, float]:
    """U for xs and its two-sided p.

    Tie-free samples with a group of at most EXACT_MAX_SIZE take the exact
    permutation p; everything else uses the tie- and continuity-corrected
    normal approximation.
    """
    x, y = _groups([xs, ys])
    pooled = np.concatenate([x, y])
    if np.all(pooled == pooled[0]):
        return x.size * y.size / 2.0, 1.0
    tied = np.unique(pooled).size < pooled.size
    method = "exact" if not tied and min(x.size, y.size) <= EXACT_MAX_SIZE else "asymptotic"
    res = stats.mannwhitneyu(x, y, use_continuity=True, alternative="two-sided", method=method)
    return float(res.statistic), min(float(res.pvalue), 1.0)


def chi2_independence(table) -> Tuple[float, int, float]:
    """Pearson chi-squared, df = (r-1)(c-1) after dropping empty rows and columns."""
    arr = np.asarray(table, dtype=float)
    if arr.ndim != 2:
        raise DomainError("contingency table must be two-dimensional")
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise DomainError("contingency counts must be finite and non-negative")
    arr = arr[arr.sum(axis=1) > 0][:, arr.sum(axis=0) > 0]
    if arr.shape[0] < 2 or arr.shape[1] < 2:
        return 0.0, 0, 1.0
    res = stats.chi2_contingency(arr, correction=False)
    statistic, dof = max(float(res.statistic), 0.0), int(res.dof)
    return statistic, dof, chi2_sf(statistic, dof)


def bonferroni(p: float, cfg: AnalysisConfig = AnalysisConfig()) -> float:
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"p value must lie in [0, 1], got {p!r}")
    return min(1.0, p * cfg.bonferroni_factor)
