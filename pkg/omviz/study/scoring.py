"""
Response scoring and the responses / scored CSV files.

responses CSV: participant_id,design,task,condition,trial_id,response,confidence,elapsed_ms
scored CSV:    participant_id,design,task,condition,trial_id,error,confidence,elapsed_ms
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from omviz.contracts.errors import DomainError, ParseError, RowError, ScoringError
from omviz.contracts.types import (
    TREND_ANSWERS,
    ResponseRecord,
    ResponseRow,
    ScoredResponse,
    StudyManifest,
    TrialSpec,
)
from omviz.stats.errors import binary_error, relative_error
from omviz.utils.logging import StructuredLogger

RESPONSE_COLUMNS = ["participant_id", "design", "task", "condition", "trial_id",
                    "response", "confidence", "elapsed_ms"]
SCORED_COLUMNS = ["participant_id", "design", "task", "condition", "trial_id",
                  "error", "confidence", "elapsed_ms"]
INT_COLUMNS = ("condition", "confidence", "elapsed_ms")

PathLike = Union[str, Path]
RowModel = TypeVar("RowModel", bound=BaseModel)

log = StructuredLogger("scoring")


def _numeric(response) -> float:
    if isinstance(response, (int, float)) and not isinstance(response, bool):
        return float(response)
    try:
        return float(str(response).strip())
    except ValueError:
        raise ScoringError(f"expected a number, got {response!r}") from None


def score(trial: TrialSpec, response: ResponseRecord) -> float:
    """Error of one response: relative for numeric tasks, 0/1 for categorical ones."""
    if response.trial_id != trial.trial_id:
        raise ScoringError(f"response for {response.trial_id!r} scored against {trial.trial_id!r}")
    if trial.task in ("identification", "estimation"):
        return relative_error(_numeric(response.response), float(trial.correct_answer))
    answer = str(response.response).strip()
    allowed = ("A", "B") if trial.task == "discrimination" else TREND_ANSWERS
    if answer not in allowed:
        raise ScoringError(f"{trial.task} answers are one of {', '.join(allowed)}; got {response.response!r}")
    return float(binary_error(answer, str(trial.correct_answer)))


def score_responses(manifest: StudyManifest, rows: Iterable[ResponseRow],
                    source: str = "responses") -> List[ScoredResponse]:
    trials: Dict[str, TrialSpec] = {t.trial_id: t for t in manifest.trials}
    scored: List[ScoredResponse] = []
    errors: List[RowError] = []
    # header is line 1
    for line, row in enumerate(rows, start=2):
        trial = trials.get(row.trial_id)
        if trial is None:
            errors.append(RowError(line=line, message=f"unknown trial_id {row.trial_id!r}"))
            continue
        if (row.design, row.task, row.condition) != (trial.design, trial.task, trial.condition):
            errors.append(RowError(line=line, message=f"design/task/condition disagree with trial {trial.trial_id}"))
            continue
        try:
            error = score(trial, row)
        except DomainError as exc:
            errors.append(RowError(line=line, message=str(exc)))
            continue
        scored.append(ScoredResponse(
            participant_id=row.participant_id, design=row.design, task=row.task,
            condition=row.condition, trial_id=row.trial_id, error=error,
            confidence=row.confidence, elapsed_ms=row.elapsed_ms,
        ))
    if errors:
        raise ParseError(source, errors)
    log.info("responses_scored", rows=len(scored), trials=len(trials))
    return scored


# ─────────────────────────────────────────────────────────────
# CSV IO
# ─────────────────────────────────────────────────────────────

def _read_rows(path: PathLike, columns: Sequence[str], model: Type[RowModel]) -> List[RowModel]:
    p = Path(path)
    if not p.is_file():
        raise DomainError(f"input file not found: {p}")
    reader = csv.DictReader(io.StringIO(p.read_text(encoding="utf-8")))
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != list(columns):
        raise ParseError(str(p), [RowError(line=1, message=f"header must be {','.join(columns)}")])
    rows: List[RowModel] = []
    errors: List[RowError] = []
    for line, raw in enumerate(reader, start=2):
        if None in raw or any(raw.get(c) is None for c in columns):
            errors.append(RowError(line=line, message=f"expected {len(columns)} fields"))
            continue
        record = {c: raw[c].strip() for c in columns}
        try:
            for c in INT_COLUMNS:
                record[c] = int(record[c])
            rows.append(model.model_validate(record))
        except ValidationError as exc:
            first = exc.errors()[0]
            field = ".".join(str(part) for part in first["loc"]) or "row"
            errors.append(RowError(line=line, message=f"{field}: {first['msg']}"))
        except ValueError as exc:
            errors.append(RowError(line=line, message=str(exc)))
    if errors:
        raise ParseError(str(p), errors)
    return rows


def read_responses(path: PathLike) -> List[ResponseRow]:
    return _read_rows(path, RESPONSE_COLUMNS, ResponseRow)


def read_scored(path: PathLike) -> List[ScoredResponse]:
    return _read_rows(path, SCORED_COLUMNS, ScoredResponse)


def _write_rows(path: PathLike, columns: Sequence[str], rows: Iterable[BaseModel]) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        data = row.model_dump()
        writer.writerow({c: (repr(data[c]) if isinstance(data[c], float) else data[c]) for c in columns})
    p.write_text(buf.getvalue(), encoding="utf-8")
    return p


def write_responses(rows: Iterable[ResponseRow], path: PathLike) -> Path:
    return _write_rows(path, RESPONSE_COLUMNS, rows)


def write_scored(rows: Iterable[ScoredResponse], path: PathLike) -> Path:
    return _write_rows(path, SCORED_COLUMNS, rows)


def read_manifest(path: PathLike) -> StudyManifest:
    p = Path(path)
    if not p.is_file():
        raise DomainError(f"study manifest not found: {p}")
    try:
        return StudyManifest.model_validate_json(p.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise DomainError(f"invalid study manifest {p}: {exc}") from exc


def write_manifest(manifest: StudyManifest, path: PathLike) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return p
