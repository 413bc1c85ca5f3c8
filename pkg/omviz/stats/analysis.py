"""
Per-task analysis of scored responses.

For each task: per-design summaries, then an omnibus test per measure
(Kruskal-Wallis on error and time, chi-squared independence of design x
Likert level on confidence). Pairwise post-hoc tests run only when the
omnibus p is below alpha; their p values are Bonferroni adjusted. Designs
without responses are listed as missing and get empty pairwise cells.
"""

from __future__ import annotations

from itertools import combinations
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from omviz.contracts.errors import DomainError
from omviz.contracts.types import (
    DESIGNS,
    TASKS,
    AnalysisConfig,
    AnalysisReport,
    DesignSummary,
    MeasureAnalysis,
    OmnibusResult,
    PairwiseCell,
    PairwiseMatrix,
    ScoredResponse,
    TaskAnalysis,
)
from omviz.stats.descriptive import adjusted_mean, box_stats, mean_ci
from omviz.stats.errors import is_exponent_error
from omviz.stats.significance import bonferroni, chi2_independence, kruskal_wallis, mann_whitney
from omviz.study.scoring import read_scored
from omviz.utils.logging import StructuredLogger, log_operation

LIKERT = (1, 2, 3, 4, 5)
QUANTITATIVE_TASKS = ("identification", "estimation")
MEASURES = ("error", "time", "confidence")
DISPLAY_NAMES = {"log_line": "Log", "oml": "OML", "horizon": "Horizon", "omh": "OMH", "ssb": "SSB"}

log = StructuredLogger("analysis")


def _likert_counts(rows: Sequence[ScoredResponse]) -> List[int]:
    return [sum(1 for r in rows if r.confidence == level) for level in LIKERT]


def summarize_design(design: str, task: str, rows: Sequence[ScoredResponse]) -> DesignSummary:
    errors = [r.error for r in rows]
    times = [float(r.elapsed_ms) for r in rows]
    by_condition: Dict[int, float] = {}
    for condition in sorted({r.condition for r in rows}):
        by_condition[condition] = adjusted_mean([r.error for r in rows if r.condition == condition])
    return DesignSummary(
        design=design,
        n=len(rows),
        error=box_stats(errors),
        error_mean=float(np.mean(errors)),
        error_adjusted_mean=adjusted_mean(errors),
        error_ci=mean_ci(errors),
        exponent_errors=sum(is_exponent_error(e) for e in errors) if task in QUANTITATIVE_TASKS else None,
        error_by_condition=by_condition,
        confidence_mean=float(np.mean([r.confidence for r in rows])),
        confidence_counts=dict(zip(LIKERT, _likert_counts(rows))),
        time=box_stats(times),
        time_adjusted_mean_ms=adjusted_mean(times),
    )


def _values(rows: Sequence[ScoredResponse], measure: str) -> List[float]:
    if measure == "error":
        return [r.error for r in rows]
    return [float(r.elapsed_ms) for r in rows]


def _omnibus(measure: str, groups: Dict[str, List[ScoredResponse]]) -> Optional[OmnibusResult]:
    if len(groups) < 2:
        return None
    if measure == "confidence":
        stat, df, p = chi2_independence([_likert_counts(rows) for rows in groups.values()])
        return OmnibusResult(test="chi2_independence", statistic=stat, df=df, p=p)
    h, p = kruskal_wallis([_values(rows, measure) for rows in groups.values()])
    return OmnibusResult(test="kruskal_wallis", statistic=h, df=len(groups) - 1, p=p)


def _pair_p(measure: str, a: Sequence[ScoredResponse], b: Sequence[ScoredResponse]) -> float:
    if measure == "confidence":
        return chi2_independence([_likert_counts(a), _likert_counts(b)])[2]
    return mann_whitney(_values(a, measure), _values(b, measure))[1]


def _pairwise(measure: str, groups: Dict[str, List[ScoredResponse]], cfg: AnalysisConfig) -> PairwiseMatrix:
    cells: List[PairwiseCell] = []
    # lower triangle: the later design in report order is the row
    for col, row in combinations(DESIGNS, 2):
        p = None
        if row in groups and col in groups:
            p = bonferroni(_pair_p(measure, groups[row], groups[col]), cfg)
        cells.append(PairwiseCell(row=row, col=col, p=p))
    return PairwiseMatrix(designs=list(DESIGNS), cells=cells)


def analyze_task(task: str, rows: Sequence[ScoredResponse], cfg: AnalysisConfig) -> TaskAnalysis:
    groups = {d: [r for r in rows if r.design == d] for d in DESIGNS}
    groups = {d: g for d, g in groups.items() if g}
    measures: List[MeasureAnalysis] = []
    for measure in MEASURES:
        omnibus = _omnibus(measure, groups)
        pairwise = _pairwise(measure, groups, cfg) if omnibus is not None and omnibus.p < cfg.alpha else None
        measures.append(MeasureAnalysis(measure=measure, omnibus=omnibus, pairwise=pairwise))
    return TaskAnalysis(
        task=task,
        designs=[summarize_design(d, task, g) for d, g in groups.items()],
        missing_designs=[d for d in DESIGNS if d not in groups],
        measures=measures,
    )


def analyze(rows: Sequence[ScoredResponse], cfg: AnalysisConfig = AnalysisConfig()) -> AnalysisReport:
    if not rows:
        raise DomainError("no scored responses to analyze")
    with log_operation(log, "analyze", rows=len(rows), alpha=cfg.alpha):
        tasks = [analyze_task(task, [r for r in rows if r.task == task], cfg) for task in TASKS]
    return AnalysisReport(config=cfg, tasks=tasks)


def analyze_file(path: Union[str, Path], cfg: AnalysisConfig = AnalysisConfig()) -> AnalysisReport:
    return analyze(read_scored(path), cfg)


# ─────────────────────────────────────────────────────────────
# Reports
# ─────────────────────────────────────────────────────────────

def report_json(report: AnalysisReport) -> str:
    return report.model_dump_json(indent=2) + "\n"


def _fmt_p(p: float) -> str:
    return f"{p:.4f}" if p >= 1e-3 else f"{p:.3e}"


def format_triangle(matrix: PairwiseMatrix, alpha: float) -> List[str]:
    designs = matrix.designs
    width = max(len(DISPLAY_NAMES[d]) for d in designs) + 2
    cell_w = 11
    lines = [" " * width + "".join(DISPLAY_NAMES[d].rjust(cell_w) for d in designs[:-1])]
    for i, row in enumerate(designs[1:], start=1):
        cells = []
        for col in designs[:i]:
            cell = matrix.get(row, col)
            if cell is None or cell.p is None:
                text = "-"
            else:
                text = _fmt_p(cell.p) + ("*" if cell.significant(alpha) else "")
            cells.append(text.rjust(cell_w))
        lines.append(DISPLAY_NAMES[row].ljust(width) + "".join(cells))
    return lines


def report_text(report: AnalysisReport) -> str:
    """Plain-text summary with one lower-triangle p matrix per task and measure."""
    alpha = report.config.alpha
    out: List[str] = [f"alpha={alpha} bonferroni_factor={report.config.bonferroni_factor}", ""]
    for task in report.tasks:
        out.append(f"== {task.task} ==")
        if task.missing_designs:
            out.append("missing: " + ", ".join(DISPLAY_NAMES[d] for d in task.missing_designs))
        for s in task.designs:
            out.append(f"{DISPLAY_NAMES[s.design]:<8} n={s.n:<4} error(adj)={s.error_adjusted_mean:.4f} "
                       f"conf={s.confidence_mean:.2f} time(adj)={s.time_adjusted_mean_ms:.0f}ms")
        for m in task.measures:
            if m.omnibus is None:
                out.append(f"-- {m.measure}: not tested (fewer than two designs)")
                continue
            o = m.omnibus
            out.append(f"-- {m.measure}: {o.test} statistic={o.statistic:.4f} df={o.df} p={_fmt_p(o.p)}")
            if m.pairwise is None:
                out.append("   no post-hoc tests (omnibus not significant)")
            else:
                out.extend("   " + line for line in format_triangle(m.pairwise, alpha))
        out.append("")
    return "\n".join(out)
