"""
Objective service: turns a point of the search space into SInE parameters
and scores the resulting selection on a corpus.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Mapping, Optional, Sequence, Union

from app.functions.bayesopt import Point, SearchSpace
from app.functions.corpus_parser import symbol_occurrences
from app.functions.metrics import ScoreReport, evaluate_selection
from app.functions.sine import SineParams
from app.models.corpus import Corpus

logger = logging.getLogger(__name__)

Value = Union[int, float]


class SineObjective:
    """
    Callable objective ``point -> S`` for the optimisers.

    Dimensions missing from the search space take their value from
    ``pinned``. Occurrence counts are computed once per corpus; conjectures
    are scored on a shared thread pool when ``threads > 1``. Use as a context
    manager so the pool is shut down.
    """

    PARAMS = ("t", "g", "k")

    def __init__(
        self,
        corpus: Corpus,
        space: SearchSpace,
        pinned: Optional[Mapping[str, Value]] = None,
        threads: int = 1,
    ):
        self.corpus = corpus
        self.space = space
        self.pinned: Dict[str, Value] = dict(pinned or {})
        self.threads = threads
        self.occ = symbol_occurrences(corpus)
        self.calls = 0
        self._executor: Optional[ThreadPoolExecutor] = (
            ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
        )

        missing = [p for p in self.PARAMS if p not in space.names and p not in self.pinned]
        if missing:
            raise ValueError(f"parameters neither searched nor pinned: {', '.join(missing)}")
        unknown = [name for name in space.names if name not in self.PARAMS]
        if unknown:
            raise ValueError(f"unknown search dimensions: {', '.join(unknown)}")

    def params_for(self, point: Sequence[Value]) -> SineParams:
        values: Dict[str, Value] = dict(self.pinned)
        values.update(zip(self.space.names, point))
        return SineParams(t=float(values["t"]), g=int(values["g"]), k=int(values["k"]))

    def full_point(self, point: Sequence[Value]) -> Dict[str, Value]:
        """The (t, g, k) triple behind a search-space point."""
        return self.params_for(point).as_dict()

    def report(self, params: SineParams) -> ScoreReport:
        return evaluate_selection(
            self.corpus,
            params,
            threads=self.threads,
            occ=self.occ,
            executor=self._executor,
        )

    def __call__(self, point: Point) -> float:
        self.calls += 1
        return self.report(self.params_for(point)).total

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __enter__(self) -> "SineObjective":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()
