from __future__ import annotations

import colorsys
import hashlib
import math
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# ─────────────────────────────────────────────────────────────
# Canonical enums / type aliases
# ─────────────────────────────────────────────────────────────

DesignKind = Literal["log_line", "oml", "horizon", "omh", "ssb"]
SeriesKind = Literal["walk", "periodic", "linear", "exponential"]
TrendKind = Literal["periodic", "linear", "exponential"]
TaskKind = Literal["identification", "discrimination", "estimation", "trend"]
Condition = Literal[1, 2, 3]
Emphasis = Literal["major", "minor"]
Measure = Literal["error", "time", "confidence"]

# Order used in every report and in the study manifest.
DESIGNS: Tuple[DesignKind, ...] = ("log_line", "oml", "horizon", "omh", "ssb")
TASKS: Tuple[TaskKind, ...] = ("identification", "discrimination", "estimation", "trend")
CONDITIONS: Tuple[int, ...] = (1, 2, 3)
TREND_ANSWERS = ("periodic", "linear", "exponential", "none")
COLORED_DESIGNS = frozenset({"horizon", "omh", "oml"})

REL_TOL = 1e-12


# ─────────────────────────────────────────────────────────────
# Magnitudes
# ─────────────────────────────────────────────────────────────

class MagnitudeValue(BaseModel):
    """A positive value split as mantissa * 10**exponent."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    value: float
    mantissa: float
    exponent: int

    @model_validator(mode="after")
    def _consistent(self):
        if not (1.0 <= self.mantissa <= 10.0):
            raise ValueError("mantissa must lie in [1, 10]")
        composed = self.mantissa * 10.0 ** self.exponent
        if not math.isclose(composed, self.value, rel_tol=REL_TOL):
            raise ValueError("value must equal mantissa * 10**exponent")
        return self


class MagnitudeRange(BaseModel):
    """Decades e_min..e_max inclusive; covers [10**e_min, 10**(e_max+1)]."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    e_min: int = 0
    e_max: int = 4

    @model_validator(mode="after")
    def _ordered(self):
        if self.e_min > self.e_max:
            raise ValueError("e_min must not exceed e_max")
        return self

    @property
    def decades(self) -> int:
        return self.e_max - self.e_min + 1

    @property
    def lower(self) -> float:
        return 10.0 ** self.e_min

    @property
    def upper(self) -> float:
        return 10.0 ** (self.e_max + 1)

    def contains(self, v: float) -> bool:
        return self.lower * (1 - REL_TOL) <= v <= self.upper * (1 + REL_TOL)


# ─────────────────────────────────────────────────────────────
# Color
# ─────────────────────────────────────────────────────────────

class HslColor(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    hue: float  # degrees
    saturation: float
    lightness: float

    @property
    def hex(self) -> str:
        r, g, b = colorsys.hls_to_rgb((self.hue % 360.0) / 360.0, self.lightness, self.saturation)
        return "#{:02x}{:02x}{:02x}".format(*(int(round(c * 255)) for c in (r, g, b)))


class OmcPalette(BaseModel):
    """Hue per exponent, tone ramp per mantissa, saturation ramp per OMH band."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    # Evenly spaced, offset away from the pure red/green axis.
    hues: List[float] = Field(default_factory=lambda: [30.0, 102.0, 174.0, 246.0, 318.0])
    tone_range: Tuple[float, float] = (0.85, 0.30)  # (lightest, darkest)
    saturation_ramp: List[float] = Field(default_factory=lambda: [0.30, 0.45, 0.60, 0.75, 0.90])
    omc_saturation: float = 0.70
    horizon_hue: float = 212.0

    @field_validator("hues")
    @classmethod
    def _distinct_hues(cls, v: List[float]) -> List[float]:
        if not v:
            raise ValueError("at least one hue is required")
        if len({h % 360.0 for h in v}) != len(v):
            raise ValueError("hues must be pairwise distinct")
        return v

    @field_validator("saturation_ramp")
    @classmethod
    def _increasing_ramp(cls, v: List[float]) -> List[float]:
        if any(not (0.0 <= s <= 1.0) for s in v):
            raise ValueError("saturation values must lie in [0, 1]")
        if any(a >= b for a, b in zip(v, v[1:])):
            raise ValueError("saturation_ramp must be strictly increasing")
        return v

    @model_validator(mode="after")
    def _tones(self):
        lightest, darkest = self.tone_range
        if not (0.0 <= darkest < lightest <= 1.0):
            raise ValueError("tone_range must be (lightest, darkest) with lightest > darkest in [0, 1]")
        if not (0.0 <= self.omc_saturation <= 1.0):
            raise ValueError("omc_saturation must lie in [0, 1]")
        return self


# ─────────────────────────────────────────────────────────────
# Series and charts
# ─────────────────────────────────────────────────────────────

class Series(BaseModel):
    model_config = ConfigDict(extra="forbid")

    values: List[float]
    seed: int = 0
    value_range: MagnitudeRange = Field(default_factory=MagnitudeRange)
    kind: SeriesKind = "walk"

    @model_validator(mode="after")
    def _within_range(self):
        if not self.values:
            raise ValueError("series must not be empty")
        bad = [i for i, v in enumerate(self.values) if not self.value_range.contains(v)]
        if bad:
            raise ValueError(f"values out of range at indices {bad[:5]}")
        return self

    def __len__(self) -> int:
        return len(self.values)


class Marker(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    label: str
    index: int

    @field_validator("label")
    @classmethod
    def _letter(cls, v: str) -> str:
        if len(v) != 1 or not v.isalpha():
            raise ValueError("marker label must be a single letter")
        return v

    @field_validator("index")
    @classmethod
    def _non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("marker index must be non-negative")
        return v


class ChartSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    design: DesignKind
    width_px: int = 972
    height_px: int = 350
    markers: List[Marker] = Field(default_factory=list)
    show_legend: bool = True
    n_bands: int = 3  # classic horizon only
    value_range: MagnitudeRange = Field(default_factory=MagnitudeRange)

    @model_validator(mode="after")
    def _geometry(self):
        if self.width_px <= 0 or self.height_px <= 0:
            raise ValueError("canvas dimensions must be positive")
        if self.n_bands < 1:
            raise ValueError("n_bands must be at least 1")
        return self


class RenderedChart(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    document: str
    layers: List[str]

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.document.encode("utf-8")).hexdigest()


class GridLine(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    y: float  # unit height, 0 = plot bottom
    emphasis: Emphasis
    label: Optional[str] = None


# ─────────────────────────────────────────────────────────────
# Study
# ─────────────────────────────────────────────────────────────

class SampleOverride(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    index: int
    value: float


class DatasetRef(BaseModel):
    """Everything needed to regenerate a trial's data bit for bit."""
    model_config = ConfigDict(extra="forbid")

    seed: int
    kind: SeriesKind
    n: int = 100
    value_range: MagnitudeRange = Field(default_factory=MagnitudeRange)
    overrides: List[SampleOverride] = Field(default_factory=list)


Answer = Union[float, str]


class TrialSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    trial_id: str
    design: DesignKind
    task: TaskKind
    condition: Condition
    dataset: DatasetRef
    marked: List[Marker] = Field(default_factory=list)
    correct_answer: Answer

    @model_validator(mode="after")
    def _task_arity(self):
        expected = {"identification": 1, "discrimination": 2, "estimation": 2, "trend": 0}[self.task]
        if len(self.marked) != expected:
            raise ValueError(f"{self.task} trials carry exactly {expected} marker(s)")
        if expected == 2:
            a, b = self.marked
            if (a.label, b.label) != ("A", "B") or not a.index < b.index:
                raise ValueError("paired markers must be A then B along the x-axis")
        if self.task in ("identification", "estimation"):
            if isinstance(self.correct_answer, str):
                raise ValueError(f"{self.task} answers are numeric")
        elif self.task == "discrimination":
            if self.correct_answer not in ("A", "B"):
                raise ValueError("discrimination answers are 'A' or 'B'")
        elif self.correct_answer not in TREND_ANSWERS[:3]:
            raise ValueError("trend answers are periodic, linear or exponential")
        return self


class StudyManifest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    master_seed: int
    trials: List[TrialSpec]


class ResponseRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    trial_id: str
    response: Answer
    confidence: int  # 5-point Likert
    elapsed_ms: int

    @field_validator("confidence")
    @classmethod
    def _likert(cls, v: int) -> int:
        if not (1 <= v <= 5):
            raise ValueError("confidence must be in 1..5")
        return v

    @field_validator("elapsed_ms")
    @classmethod
    def _non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("elapsed_ms must be non-negative")
        return v


class ResponseRow(ResponseRecord):
    """One line of the responses CSV."""

    participant_id: str
    design: DesignKind
    task: TaskKind
    condition: Condition


class ScoredResponse(BaseModel):
    model_config = ConfigDict(extra="forbid")

    participant_id: str
    design: DesignKind
    task: TaskKind
    condition: Condition
    trial_id: str
    error: float
    confidence: int
    elapsed_ms: int

    @field_validator("error")
    @classmethod
    def _non_negative(cls, v: float) -> float:
        if v < 0 or math.isnan(v):
            raise ValueError("error must be a non-negative number")
        return v

    @field_validator("confidence")
    @classmethod
    def _likert(cls, v: int) -> int:
        if not (1 <= v <= 5):
            raise ValueError("confidence must be in 1..5")
        return v


# ─────────────────────────────────────────────────────────────
# Analysis
# ─────────────────────────────────────────────────────────────

class AnalysisConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    alpha: float = 0.05
    bonferroni_factor: int = 10

    @field_validator("alpha")
    @classmethod
    def _alpha(cls, v: float) -> float:
        if not (0.0 < v < 1.0):
            raise ValueError("alpha must lie in (0, 1)")
        return v

    @field_validator("bonferroni_factor")
    @classmethod
    def _factor(cls, v: int) -> int:
        if v < 1:
            raise ValueError("bonferroni_factor must be at least 1")
        return v


class BoxStats(BaseModel):
    model_config = ConfigDict(extra="forbid")

    q1: float
    median: float
    q3: float
    whisker_low: float
    whisker_high: float
    outliers: List[float] = Field(default_factory=list)

    @model_validator(mode="after")
    def _ordered(self):
        if not (self.q1 <= self.median <= self.q3):
            raise ValueError("quartiles must satisfy q1 <= median <= q3")
        return self


class MeanInterval(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mean: float
    low: float
    high: float
    n: int


class DesignSummary(BaseModel):
    model_config = ConfigDict(extra="forbid")

    design: DesignKind
    n: int
    error: BoxStats
    error_mean: float
    error_adjusted_mean: float
    error_ci: MeanInterval
    exponent_errors: Optional[int] = None  # quantitative tasks only
    error_by_condition: Dict[int, float] = Field(default_factory=dict)
    confidence_mean: float
    confidence_counts: Dict[int, int] = Field(default_factory=dict)
    time: BoxStats
    time_adjusted_mean_ms: float


class OmnibusResult(BaseModel):
    model_config = ConfigDict(extra="forbid")

    test: Literal["kruskal_wallis", "chi2_independence"]
    statistic: float
    df: int
    p: float


class PairwiseCell(BaseModel):
    model_config = ConfigDict(extra="forbid")

    row: DesignKind
    col: DesignKind
    p: Optional[float] = None  # Bonferroni-adjusted; None when a design is missing

    def significant(self, alpha: float) -> bool:
        return self.p is not None and self.p < alpha


class PairwiseMatrix(BaseModel):
    """Lower triangle: one cell per unordered design pair."""
    model_config = ConfigDict(extra="forbid")

    designs: List[DesignKind]
    cells: List[PairwiseCell]

    def get(self, a: str, b: str) -> Optional[PairwiseCell]:
        for cell in self.cells:
            if {cell.row, cell.col} == {a, b}:
                return cell
        return None


class MeasureAnalysis(BaseModel):
    model_config = ConfigDict(extra="forbid")

    measure: Measure
    omnibus: Optional[OmnibusResult] = None
    pairwise: Optional[PairwiseMatrix] = None


class TaskAnalysis(BaseModel):
    model_config = ConfigDict(extra="forbid")

    task: TaskKind
    designs: List[DesignSummary] = Field(default_factory=list)
    missing_designs: List[DesignKind] = Field(default_factory=list)
    measures: List[MeasureAnalysis] = Field(default_factory=list)

    def measure(self, name: str) -> MeasureAnalysis:
        for m in self.measures:
            if m.measure == name:
                return m
        raise KeyError(name)

    def summary(self, design: str) -> Optional[DesignSummary]:
        for s in self.designs:
            if s.design == design:
                return s
        return None


class AnalysisReport(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: AnalysisConfig
    tasks: List[TaskAnalysis] = Field(default_factory=list)

    def task(self, name: str) -> TaskAnalysis:
        for t in self.tasks:
            if t.task == name:
                return t
        raise KeyError(name)
