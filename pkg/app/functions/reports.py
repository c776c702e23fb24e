"""
Artifact writers: selection listings, score reports, tuning histories and
posterior curves as CSV, summaries as JSON.

CSV output is deterministic for identical inputs; wall-clock times only
appear in the JSON summaries.
"""

import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence

from pydantic import BaseModel

from app.functions.bayesopt import PosteriorPoint, TuneRun
from app.functions.metrics import ScoreReport
from app.utils.helpers import format_number, rows_to_csv

Value = Any


class TimingSummary(BaseModel):
    objective_seconds: float
    model_seconds: float
    total_seconds: float


class TuneSummary(BaseModel):
    method: str
    best_params: Dict[str, Value]
    best_score: float
    best_proofs_found_fraction: Optional[float] = None
    evaluations: int
    seed: Optional[int] = None
    settings: Dict[str, Value] = {}
    wall_time: TimingSummary


class SelectionSummary(BaseModel):
    total: float
    proofs_found_fraction: float
    mean_recommended: float
    params: Dict[str, Value]


def selection_csv(report: ScoreReport) -> str:
    """``conjecture,recommended_facts`` with facts space-separated in corpus order."""
    return rows_to_csv(
        ["conjecture", "recommended_facts"],
        ([row.conjecture, " ".join(row.recommended_facts)] for row in report.per_conjecture),
    )


def scores_csv(report: ScoreReport) -> str:
    return rows_to_csv(
        ["conjecture", "S_i", "recommended", "intersection"],
        (
            [row.conjecture, format_number(row.score), row.recommended, row.intersection]
            for row in report.per_conjecture
        ),
    )


def selection_summary(report: ScoreReport) -> SelectionSummary:
    return SelectionSummary(
        total=report.total,
        proofs_found_fraction=report.proofs_found_fraction,
        mean_recommended=report.mean_recommended,
        params=report.params.as_dict(),
    )


def history_csv(
    run: TuneRun,
    full_point: Callable[[Sequence[Value]], Mapping[str, Value]],
    columns: Sequence[str] = ("t", "g", "k"),
) -> str:
    """
    ``iter,t,g,k,objective,is_incumbent``.

    ``full_point`` expands a search-space point to every parameter column,
    filling in pinned values.
    """
    rows: List[List[str]] = []
    for obs in run.history:
        values = full_point(obs.point)
        rows.append(
            [str(obs.iteration)]
            + [format_number(values[c]) for c in columns]
            + [format_number(obs.value), "1" if obs.is_incumbent else "0"]
        )
    return rows_to_csv(["iter", *columns, "objective", "is_incumbent"], rows)


def posterior_csv(curve: Sequence[PosteriorPoint], column: str = "t") -> str:
    return rows_to_csv(
        [column, "posterior_mean", "posterior_sd", "ucb"],
        (
            [format_number(p.value), format_number(p.mean), format_number(p.sd), format_number(p.ucb)]
            for p in curve
        ),
    )


def tune_summary(
    run: TuneRun,
    best_params: Mapping[str, Value],
    best_proofs_found_fraction: Optional[float] = None,
    settings: Optional[Mapping[str, Value]] = None,
) -> TuneSummary:
    seed = run.extra.get("seed")
    return TuneSummary(
        method=run.method,
        best_params=dict(best_params),
        best_score=run.incumbent.value,
        best_proofs_found_fraction=best_proofs_found_fraction,
        evaluations=run.evaluations,
        seed=seed if isinstance(seed, int) else None,
        settings=dict(settings or {}),
        wall_time=TimingSummary(
            objective_seconds=run.objective_seconds,
            model_seconds=run.model_seconds,
            total_seconds=run.wall_seconds,
        ),
    )


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def write_json(path: Path, model: BaseModel) -> Path:
    payload = json.dumps(model.model_dump(mode="json"), indent=2, sort_keys=True)
    return write_text(path, payload + "\n")
