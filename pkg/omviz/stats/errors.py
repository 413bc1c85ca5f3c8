"""Per-response error metrics."""

from __future__ import annotations

import math

from omviz.contracts.errors import DomainError

# a relative error at or above this misjudged the order of magnitude
EXPONENT_ERROR_THRESHOLD = 1.0


def relative_error(response: float, correct: float) -> float:
    """|1 - response / correct|; scale invariant, so 10 vs 100 and 1000 vs 10000 both give 0.9."""
    if correct == 0:
        raise DomainError("relative error is undefined for a correct value of 0")
    if not (math.isfinite(response) and math.isfinite(correct)):
        raise DomainError(f"relative error needs finite inputs, got {response!r}, {correct!r}")
    return abs(1.0 - response / correct)


def binary_error(response: str, correct: str) -> int:
    return 0 if response == correct else 1


def is_exponent_error(error: float) -> bool:
    return error >= EXPONENT_ERROR_THRESHOLD
