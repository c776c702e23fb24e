"""
SInE premise selection.

A symbol s triggers a premise p when s occurs in p and either s is rare in
absolute terms (occ(s) <= g) or s is at most t times more frequent than every
symbol of p. Starting from the goal symbols, triggered premises contribute
their symbols to the next round, for at most k rounds.
"""

from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Set, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.functions.corpus_parser import symbol_occurrences
from app.models.corpus import Conjecture, Corpus, Fact


class SineParams(BaseModel):
    """Tolerance t, generality threshold g and depth k."""

    model_config = ConfigDict(frozen=True)

    t: float = Field(gt=0, allow_inf_nan=False)
    g: int = Field(ge=1)
    k: int = Field(ge=0)

    def as_dict(self) -> dict:
        return {"t": self.t, "g": self.g, "k": self.k}


@dataclass(frozen=True)
class TriggerIndex:
    """For every symbol id, the ids of the facts it triggers (ascending)."""

    by_symbol: Tuple[Tuple[int, ...], ...]

    def triggered_by(self, symbol_id: int) -> Tuple[int, ...]:
        return self.by_symbol[symbol_id]


def triggers(
    corpus: Corpus,
    occ: np.ndarray,
    params: SineParams,
    s: int,
    p: Fact,
) -> bool:
    """Evaluate the trigger relation for one (symbol, premise) pair."""
    if s not in p.symbols:
        return False
    occ_s = int(occ[s])
    if occ_s <= params.g:
        return True
    return all(occ_s <= params.t * int(occ[other]) for other in p.symbols)


def build_trigger_index(
    corpus: Corpus,
    params: SineParams,
    occ: Optional[np.ndarray] = None,
) -> TriggerIndex:
    """Evaluate the trigger relation for every (symbol, fact) pair at once."""
    if occ is None:
        occ = symbol_occurrences(corpus)

    buckets: List[List[int]] = [[] for _ in range(len(corpus.symbols))]
    for fact_id, fact in enumerate(corpus.facts):
        # occ(s) <= t * occ(s'') for all s'' reduces to the rarest symbol
        bound = params.t * int(min(occ[s] for s in fact.symbols))
        for s in fact.symbols:
            occ_s = int(occ[s])
            if occ_s <= params.g or occ_s <= bound:
                buckets[s].append(fact_id)

    return TriggerIndex(tuple(tuple(bucket) for bucket in buckets))


def _expand(
    corpus: Corpus,
    conjecture: Conjecture,
    index: TriggerIndex,
    max_rounds: Optional[int],
) -> Tuple[Set[int], int]:
    """Run triggering rounds; return selected fact ids and rounds that added facts."""
    accessible = {corpus.fact_id(name) for name in conjecture.accessible}
    frontier: Set[int] = set(conjecture.goal_symbols)
    seen_symbols: Set[int] = set(frontier)
    selected: Set[int] = set()
    rounds = 0

    while max_rounds is None or rounds < max_rounds:
        new_facts = {
            fact_id
            for s in frontier
            for fact_id in index.triggered_by(s)
            if fact_id in accessible and fact_id not in selected
        }
        if not new_facts:
            break
        rounds += 1
        selected |= new_facts

        frontier = set()
        for fact_id in new_facts:
            frontier.update(corpus.facts[fact_id].symbols)
        frontier -= seen_symbols
        seen_symbols |= frontier

    return selected, rounds


def select_premises(
    corpus: Corpus,
    conjecture: Conjecture,
    params: SineParams,
    index: Optional[TriggerIndex] = None,
) -> FrozenSet[str]:
    """
    Recommend premises for a conjecture.

    Only the conjecture's accessible facts are considered. Stops early once
    a round adds nothing, so large k costs no more than the fixpoint.
    Pass a prebuilt ``index`` to share it across conjectures.
    """
    if params.k == 0:
        return frozenset()
    if index is None:
        index = build_trigger_index(corpus, params)
    selected, _ = _expand(corpus, conjecture, index, params.k)
    return frozenset(corpus.facts[i].name for i in selected)


def fixpoint_depth(
    corpus: Corpus,
    conjecture: Conjecture,
    params: SineParams,
    index: Optional[TriggerIndex] = None,
) -> int:
    """Smallest k* such that selecting with any k >= k* gives the same set; ignores params.k."""
    if index is None:
        index = build_trigger_index(corpus, params)
    _, rounds = _expand(corpus, conjecture, index, None)
    return rounds
