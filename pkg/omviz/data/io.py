# omviz/data/io.py
"""Series and dataset-manifest files: CSV (index,value), JSON arrays, JSON manifests."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import List, Optional, Union

from omviz.contracts.errors import DomainError, ParseError, RowError
from omviz.contracts.types import DatasetRef, MagnitudeRange, Series

PathLike = Union[str, Path]


def series_to_csv(series: Series) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "value"])
    for i, v in enumerate(series.values):
        writer.writerow([i, repr(float(v))])
    return buf.getvalue()


def write_series_csv(series: Series, path: PathLike) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(series_to_csv(series), encoding="utf-8")
    return p


def write_manifest(ref: DatasetRef, path: PathLike) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(ref.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return p


def _parse_csv_values(text: str, source: str) -> List[float]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["index", "value"]:
        raise ParseError(source, [RowError(line=1, message="header must be 'index,value'")])
    rows: dict[int, float] = {}
    errors: List[RowError] = []
    for line, row in enumerate(reader, start=2):
        try:
            index = int(row["index"])
            value = float(row["value"])
        except (TypeError, ValueError):
            errors.append(RowError(line=line, message=f"unparseable row {row!r}"))
            continue
        if not math.isfinite(value) or value <= 0:
            errors.append(RowError(line=line, message=f"value must be positive, got {row['value']!r}"))
        elif index in rows:
            errors.append(RowError(line=line, message=f"duplicate index {index}"))
        else:
            rows[index] = value
    if not errors and sorted(rows) != list(range(len(rows))):
        errors.append(RowError(line=1, message="indices must run 0..n-1 without gaps"))
    if errors:
        raise ParseError(source, errors)
    return [rows[i] for i in range(len(rows))]


def _parse_json_values(text: str, source: str) -> List[float]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(source, [RowError(line=exc.lineno, message=exc.msg)]) from exc
    if not isinstance(data, list):
        raise ParseError(source, [RowError(line=1, message="expected a JSON array of numbers")])
    errors = [
        RowError(line=1, message=f"item {i} is not a positive number: {v!r}")
        for i, v in enumerate(data)
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0
    ]
    if errors:
        raise ParseError(source, errors)
    return [float(v) for v in data]


def read_series(path: PathLike, value_range: Optional[MagnitudeRange] = None) -> Series:
    """Load a series from CSV (index,value) or a JSON array, by file suffix."""
    p = Path(path)
    if not p.is_file():
        raise DomainError(f"input file not found: {p}")
    text = p.read_text(encoding="utf-8")
    values = _parse_json_values(text, str(p)) if p.suffix.lower() == ".json" else _parse_csv_values(text, str(p))
    if not values:
        raise ParseError(str(p), [RowError(line=1, message="series is empty")])
    try:
        return Series(values=values, value_range=value_range or MagnitudeRange())
    except ValueError as exc:
        raise DomainError(f"{p}: {exc}") from exc


def read_manifest(path: PathLike) -> DatasetRef:
    p = Path(path)
    if not p.is_file():
        raise DomainError(f"manifest not found: {p}")
    try:
        return DatasetRef.model_validate_json(p.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise DomainError(f"invalid manifest {p}: {exc}") from exc
