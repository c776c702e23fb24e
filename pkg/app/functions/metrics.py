"""
Selection quality: the per-conjecture score, its sum over a corpus and the
proofs-found rate.

The score rewards recall and penalises recommendation size exponentially:

    S_i = |R ∩ P| / |P| + |R ∩ P| / 2^|R|,   S_i = 0 when R is empty.

A conjecture counts as proved when every required premise was recommended.
"""

from concurrent.futures import Executor, ThreadPoolExecutor
from typing import AbstractSet, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.functions.corpus_parser import symbol_occurrences
from app.functions.sine import SineParams, TriggerIndex, build_trigger_index, select_premises
from app.models.corpus import Conjecture, Corpus


def score_conjecture(required: AbstractSet[str], recommended: AbstractSet[str]) -> float:
    """Score one recommendation against the required premises."""
    if not required:
        raise ValueError("required premise set must be non-empty")
    if not recommended:
        return 0.0
    hits = len(required & recommended)
    return hits / len(required) + hits / float(np.exp2(float(len(recommended))))


class ConjectureScore(BaseModel):
    model_config = ConfigDict(frozen=True)

    conjecture: str
    score: float
    recommended: int
    intersection: int
    proved: bool
    recommended_facts: Tuple[str, ...] = ()


class ScoreReport(BaseModel):
    """Per-conjecture rows in corpus order plus the aggregates."""

    model_config = ConfigDict(frozen=True)

    params: SineParams
    per_conjecture: Tuple[ConjectureScore, ...]
    total: float
    proofs_found_fraction: float

    @property
    def mean_recommended(self) -> float:
        if not self.per_conjecture:
            return 0.0
        return sum(row.recommended for row in self.per_conjecture) / len(self.per_conjecture)


def _score_one(
    corpus: Corpus,
    conjecture: Conjecture,
    params: SineParams,
    index: TriggerIndex,
    order: Dict[str, int],
) -> ConjectureScore:
    recommended = select_premises(corpus, conjecture, params, index=index)
    return ConjectureScore(
        conjecture=conjecture.name,
        score=score_conjecture(conjecture.required, recommended),
        recommended=len(recommended),
        intersection=len(conjecture.required & recommended),
        proved=conjecture.required <= recommended,
        recommended_facts=tuple(sorted(recommended, key=order.__getitem__)),
    )


def evaluate_selection(
    corpus: Corpus,
    params: SineParams,
    threads: int = 1,
    occ: Optional[np.ndarray] = None,
    executor: Optional[Executor] = None,
) -> ScoreReport:
    """
    Run SInE for every conjecture and score the recommendations.

    Results do not depend on ``threads``: rows keep corpus order and the
    total is summed in that order.
    """
    if not corpus.conjectures:
        raise ValueError("corpus has no conjectures to score")

    if occ is None:
        occ = symbol_occurrences(corpus)
    index = build_trigger_index(corpus, params, occ=occ)
    order = {name: i for i, name in enumerate(corpus.fact_names)}

    def score(conjecture: Conjecture) -> ConjectureScore:
        return _score_one(corpus, conjecture, params, index, order)

    rows: List[ConjectureScore]
    if executor is not None:
        rows = list(executor.map(score, corpus.conjectures))
    elif threads > 1 and len(corpus.conjectures) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(score, corpus.conjectures))
    else:
        rows = [score(c) for c in corpus.conjectures]

    total = 0.0
    for row in rows:
        total += row.score
    proved = sum(1 for row in rows if row.proved)

    return ScoreReport(
        params=params,
        per_conjecture=tuple(rows),
        total=total,
        proofs_found_fraction=proved / len(rows),
    )


def aggregate_score(corpus: Corpus, params: SineParams, threads: int = 1) -> float:
    """S: the sum of per-conjecture scores."""
    return evaluate_selection(corpus, params, threads=threads).total


def proofs_found(corpus: Corpus, params: SineParams, threads: int = 1) -> float:
    """Fraction of conjectures whose required premises were all recommended."""
    return evaluate_selection(corpus, params, threads=threads).proofs_found_fraction
