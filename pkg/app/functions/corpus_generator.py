"""
Synthetic corpus generation.

Symbol frequencies follow a Zipf law (exponent 1). Required premise sets
come from running SInE at a hidden parameter triple and keeping at most
eight of the selected facts per conjecture, so a tuner has a ground truth
to recover.
"""

from typing import List

import numpy as np

from app.core.errors import TunerError
from app.functions.corpus_parser import parse_corpus, render_corpus
from app.functions.sine import SineParams, build_trigger_index, select_premises
from app.models.corpus import Conjecture, Corpus, Fact, SymbolTable

MAX_REQUIRED = 8
ZIPF_EXPONENT = 1.0


def zipf_weights(n: int, exponent: float = ZIPF_EXPONENT) -> np.ndarray:
    ranks = np.arange(1, n + 1, dtype=float)
    weights = ranks**-exponent
    return weights / weights.sum()


def generate_corpus(
    n_facts: int,
    n_symbols: int,
    n_conjectures: int,
    seed: int,
    truth: SineParams = SineParams(t=2.0, g=3, k=2),
) -> Corpus:
    """Build a random corpus; identical arguments give an identical corpus."""
    if n_facts < 1:
        raise TunerError("n_facts must be >= 1")
    if n_symbols < 1:
        raise TunerError("n_symbols must be >= 1")
    if n_conjectures < 1:
        raise TunerError("n_conjectures must be >= 1 (scores need at least one)")
    if seed < 0:
        raise TunerError("seed must be non-negative")

    rng = np.random.default_rng(seed)
    weights = zipf_weights(n_symbols)
    width = len(str(max(n_facts, n_symbols, n_conjectures)))
    symbol_names = tuple(f"s{i:0{width}d}" for i in range(n_symbols))

    facts: List[Fact] = []
    for i in range(n_facts):
        size = int(rng.integers(1, min(5, n_symbols) + 1))
        chosen = rng.choice(n_symbols, size=size, replace=False, p=weights)
        facts.append(Fact(f"p{i:0{width}d}", frozenset(int(s) for s in chosen)))

    draft = Corpus(SymbolTable(symbol_names), tuple(facts), ())
    index = build_trigger_index(draft, truth)
    all_names = frozenset(fact.name for fact in facts)

    conjectures: List[Conjecture] = []
    for j in range(n_conjectures):
        source = facts[int(rng.integers(n_facts))]
        source_symbols = sorted(source.symbols)
        n_goal = int(rng.integers(1, len(source_symbols) + 1))
        goal = frozenset(
            int(s) for s in rng.choice(source_symbols, size=n_goal, replace=False)
        )
        query = Conjecture(f"c{j:0{width}d}", goal, frozenset([source.name]), all_names)
        selected = sorted(select_premises(draft, query, truth, index=index))
        if not selected:
            required = [source.name]
        else:
            size = int(rng.integers(1, min(MAX_REQUIRED, len(selected)) + 1))
            required = [str(name) for name in rng.choice(selected, size=size, replace=False)]
        conjectures.append(Conjecture(query.name, goal, frozenset(required), all_names))

    corpus = Corpus(SymbolTable(symbol_names), tuple(facts), tuple(conjectures))
    # Re-intern by first appearance; unreferenced symbols drop out.
    return parse_corpus(render_corpus(corpus))
