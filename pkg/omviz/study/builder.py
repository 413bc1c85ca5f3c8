"""
Stimulus set construction.

One trial per (design, task, condition), each on its own dataset. Marked
points are drawn with the task's condition as a hard constraint: when a
dataset has no qualifying sample (or pair) it is regenerated from a fresh
seed, up to STUDY_CONFIG["max_regenerations"] times. Condition 1 of the
identification task is manufactured: one sample is snapped onto the nearest
grid value and the snap is stored as a SampleOverride so the dataset replays
exactly from its DatasetRef.
"""

from __future__ import annotations

from typing import List, Set, Tuple

import numpy as np

from omviz.config.settings import STUDY_CONFIG
from omviz.contracts.errors import GenerationError, SelectionError, UsageError
from omviz.contracts.types import (
    CONDITIONS,
    DESIGNS,
    TASKS,
    Answer,
    DatasetRef,
    MagnitudeRange,
    Marker,
    SampleOverride,
    Series,
    StudyManifest,
    TrialSpec,
)
from omviz.data.datagen import make_rng, random_walk, trend_series
from omviz.magnitude.core import compose, decompose_array_in_range, decompose_in_range
from omviz.utils.logging import StructuredLogger, log_operation

# mantissas of the decade line (1, and 10 at the range top) and the minor line (5)
GRID_MANTISSAS = (1.0, 5.0, 10.0)

TREND_BY_CONDITION = {1: "periodic", 2: "linear", 3: "exponential"}

SEED_BOUND = 2 ** 63

log = StructuredLogger("study")


# ─────────────────────────────────────────────────────────────
# Datasets
# ─────────────────────────────────────────────────────────────

def materialize(ref: DatasetRef) -> Series:
    """Regenerate the series a DatasetRef points at, overrides applied."""
    if ref.kind == "walk":
        series = random_walk(ref.seed, ref.n, ref.value_range)
    else:
        series = trend_series(ref.kind, ref.seed, ref.n, ref.value_range)
    if not ref.overrides:
        return series
    values = list(series.values)
    for override in ref.overrides:
        values[override.index] = override.value
    return series.model_copy(update={"values": values})


def snap_to_grid(value: float, value_range: MagnitudeRange) -> float:
    """Nearest value whose mantissa sits on a gridline of the same decade."""
    mv = decompose_in_range(value, value_range)
    nearest = min(GRID_MANTISSAS, key=lambda g: abs(mv.mantissa - g))
    return compose(nearest, mv.exponent)


# ─────────────────────────────────────────────────────────────
# Condition predicates
# ─────────────────────────────────────────────────────────────

def _grid_distance(mantissas: np.ndarray) -> np.ndarray:
    return np.min(np.abs(mantissas[:, None] - np.asarray(GRID_MANTISSAS)[None, :]), axis=1)


def _identification_mask(values, condition: int, value_range: MagnitudeRange,
                         tolerance: float) -> np.ndarray:
    m, e = decompose_array_in_range(values, value_range)
    on_grid = _grid_distance(m) <= tolerance
    if condition == 1:
        return on_grid
    if condition == 2:
        high = (e == value_range.e_max - 1) | (e == value_range.e_max)
        return high & ~on_grid
    if condition == 3:
        low = (e == value_range.e_min + 1) | (e == value_range.e_min + 2)
        return low & ~on_grid
    raise UsageError(f"unknown condition: {condition!r}")


def identification_condition_holds(value: float, condition: int, value_range: MagnitudeRange,
                                   tolerance: float = STUDY_CONFIG["grid_tolerance"]) -> bool:
    return bool(_identification_mask([value], condition, value_range, tolerance)[0])


def _pair_gap_ok(gap: np.ndarray, condition: int) -> np.ndarray:
    if condition == 1:
        return gap == 0
    if condition == 2:
        return gap == 1
    if condition == 3:
        return gap >= 2
    raise UsageError(f"unknown condition: {condition!r}")


def pair_condition_holds(value_a: float, value_b: float, condition: int,
                         value_range: MagnitudeRange) -> bool:
    if value_a == value_b:
        return False
    e_a = decompose_in_range(value_a, value_range).exponent
    e_b = decompose_in_range(value_b, value_range).exponent
    return bool(_pair_gap_ok(np.array([abs(e_a - e_b)]), condition)[0])


# ─────────────────────────────────────────────────────────────
# Selection
# ─────────────────────────────────────────────────────────────

def select_identification_point(series: Series, condition: int, rng: np.random.Generator,
                                tolerance: float = STUDY_CONFIG["grid_tolerance"]) -> int:
    mask = _identification_mask(series.values, condition, series.value_range, tolerance)
    candidates = np.flatnonzero(mask)
    if candidates.size == 0:
        raise SelectionError(f"no sample satisfies identification condition {condition}")
    return int(candidates[rng.integers(candidates.size)])


def select_pair(series: Series, condition: int, rng: np.random.Generator,
                min_separation: int = STUDY_CONFIG["min_marker_separation"]) -> Tuple[int, int]:
    """Indices (a, b), a < b and at least min_separation apart, meeting the exponent-gap condition."""
    v = np.asarray(series.values, dtype=float)
    _, e = decompose_array_in_range(v, series.value_range)
    ia, ib = np.triu_indices(len(v), k=max(min_separation, 1))
    ok = _pair_gap_ok(np.abs(e[ia] - e[ib]), condition) & (v[ia] != v[ib])
    candidates = np.flatnonzero(ok)
    if candidates.size == 0:
        raise SelectionError(f"no pair satisfies condition {condition}")
    pick = candidates[rng.integers(candidates.size)]
    return int(ia[pick]), int(ib[pick])


# ─────────────────────────────────────────────────────────────
# Trials
# ─────────────────────────────────────────────────────────────

def _draw_seed(rng: np.random.Generator, used: Set[int]) -> int:
    while True:
        seed = int(rng.integers(0, SEED_BOUND))
        if seed not in used:
            used.add(seed)
            return seed


def _marked_trial(design: str, task: str, condition: int, rng: np.random.Generator,
                  used: Set[int], value_range: MagnitudeRange,
                  run_log: StructuredLogger = log) -> TrialSpec:
    n = STUDY_CONFIG["series_length"]
    budget = STUDY_CONFIG["max_regenerations"]
    for attempt in range(budget):
        ref = DatasetRef(seed=_draw_seed(rng, used), kind="walk", n=n, value_range=value_range)
        series = materialize(ref)
        try:
            if task == "identification":
                if condition == 1:
                    # the marked sample itself is snapped onto the grid
                    index = int(rng.integers(n))
                    ref = ref.model_copy(update={
                        "overrides": [SampleOverride(index=index, value=snap_to_grid(series.values[index], value_range))]
                    })
                    series = materialize(ref)
                else:
                    index = select_identification_point(series, condition, rng)
                marked = [Marker(label="A", index=index)]
                answer: Answer = series.values[index]
            else:
                a, b = select_pair(series, condition, rng)
                marked = [Marker(label="A", index=a), Marker(label="B", index=b)]
                va, vb = series.values[a], series.values[b]
                answer = ("B" if vb > va else "A") if task == "discrimination" else abs(vb - va)
        except SelectionError:
            run_log.debug("dataset_regenerated", design=design, task=task, condition=condition, attempt=attempt)
            continue
        return TrialSpec(trial_id=f"{design}-{task}-{condition}", design=design, task=task,
                         condition=condition, dataset=ref, marked=marked, correct_answer=answer)
    raise GenerationError(
        f"{task} condition {condition} unsatisfiable after {budget} datasets",
        task=task, condition=condition,
    )


def _trend_trial(design: str, condition: int, rng: np.random.Generator, used: Set[int],
                 value_range: MagnitudeRange) -> TrialSpec:
    kind = TREND_BY_CONDITION[condition]
    ref = DatasetRef(seed=_draw_seed(rng, used), kind=kind,
                     n=STUDY_CONFIG["series_length"], value_range=value_range)
    return TrialSpec(trial_id=f"{design}-trend-{condition}", design=design, task="trend",
                     condition=condition, dataset=ref, marked=[], correct_answer=kind)


def build_study(master_seed: int, value_range: MagnitudeRange = MagnitudeRange()) -> List[TrialSpec]:
    """5 designs x 4 tasks x 3 conditions = 60 trials, one unique dataset each."""
    rng = make_rng(master_seed)
    used: Set[int] = set()
    trials: List[TrialSpec] = []
    run_log = log.bind(master_seed=master_seed)
    with log_operation(run_log, "build_study"):
        for design in DESIGNS:
            for task in TASKS:
                for condition in CONDITIONS:
                    if task == "trend":
                        trials.append(_trend_trial(design, condition, rng, used, value_range))
                    else:
                        trials.append(_marked_trial(design, task, condition, rng, used, value_range, run_log))
    return trials


def build_manifest(master_seed: int) -> StudyManifest:
    return StudyManifest(master_seed=master_seed, trials=build_study(master_seed))


def marked_values(trial: TrialSpec) -> List[float]:
    series = materialize(trial.dataset)
    return [series.values[m.index] for m in trial.marked]


def verify_trial(trial: TrialSpec) -> bool:
    """Re-check a trial's markers and answer against its regenerated dataset."""
    values = marked_values(trial)
    value_range = trial.dataset.value_range
    if trial.task == "trend":
        return trial.correct_answer == trial.dataset.kind
    if trial.task == "identification":
        return (identification_condition_holds(values[0], trial.condition, value_range)
                and trial.correct_answer == values[0])
    a, b = trial.marked
    if b.index - a.index < STUDY_CONFIG["min_marker_separation"]:
        return False
    if not pair_condition_holds(values[0], values[1], trial.condition, value_range):
        return False
    if trial.task == "discrimination":
        return trial.correct_answer == ("B" if values[1] > values[0] else "A")
    return abs(float(trial.correct_answer) - abs(values[1] - values[0])) <= 1e-9
