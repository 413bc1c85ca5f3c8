"""
Synthetic responders for exercising score + analyze end to end.

A perfect responder always answers correctly. A responder that is bad on a
design answers every trial of that design wrongly: numeric answers off by a
factor of 10 (error 9), the other letter, or "none" for trends. Confidence and
time are drawn once per (participant slot, task, condition) and reused for
every design, so only the error measure separates designs.
"""

from __future__ import annotations

from typing import Collection, List, Sequence

from omviz.contracts.types import ResponseRow, TrialSpec
from omviz.data.datagen import make_rng


def wrong_answer(trial: TrialSpec):
    if trial.task in ("identification", "estimation"):
        return float(trial.correct_answer) * 10.0
    if trial.task == "discrimination":
        return "A" if trial.correct_answer == "B" else "B"
    return "none"


def synthetic_responses(trials: Sequence[TrialSpec], n_participants: int = 10, seed: int = 0,
                        bad_designs: Collection[str] = ()) -> List[ResponseRow]:
    rng = make_rng(seed)
    cells = sorted({(t.task, t.condition) for t in trials})
    confidence = {cell: rng.integers(1, 6, size=n_participants) for cell in cells}
    elapsed = {cell: rng.integers(2_000, 60_000, size=n_participants) for cell in cells}

    rows: List[ResponseRow] = []
    for trial in trials:
        cell = (trial.task, trial.condition)
        for k in range(n_participants):
            answer = wrong_answer(trial) if trial.design in bad_designs else trial.correct_answer
            rows.append(ResponseRow(
                participant_id=f"{trial.design}-p{k:02d}",
                design=trial.design, task=trial.task, condition=trial.condition,
                trial_id=trial.trial_id, response=answer,
                confidence=int(confidence[cell][k]), elapsed_ms=int(elapsed[cell][k]),
            ))
    return rows
