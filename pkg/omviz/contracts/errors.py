# omviz/contracts/errors.py
"""Exception hierarchy. The CLI maps DomainError to exit 1, UsageError to exit 2."""

from typing import List

from pydantic import BaseModel


class OmvizError(Exception):
    """Base class for every error raised on purpose by omviz."""


class DomainError(OmvizError, ValueError):
    """Input outside the mathematical domain of an operation."""


class RangeError(DomainError):
    """Value, exponent or index outside the configured range."""


class UsageError(OmvizError):
    """Unknown design, task kind or malformed option."""


class SelectionError(DomainError):
    """No sample of a series satisfies a trial condition."""


class GenerationError(DomainError):
    """A trial condition could not be met within the regeneration budget."""

    def __init__(self, message: str, task: str, condition: int):
        super().__init__(message)
        self.task = task
        self.condition = condition


class ScoringError(DomainError):
    """A response does not match the answer type of its trial."""


class RowError(BaseModel):
    line: int
    message: str


class ParseError(DomainError):
    """Malformed input rows; carries one entry per offending line."""

    def __init__(self, source: str, errors: List[RowError]):
        self.source = source
        self.errors = errors
        details = "; ".join(f"line {e.line}: {e.message}" for e in errors[:10])
        more = f" (+{len(errors) - 10} more)" if len(errors) > 10 else ""
        super().__init__(f"{source}: {len(errors)} malformed row(s): {details}{more}")
