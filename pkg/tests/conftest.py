"""
Shared fixtures: small hand-checkable corpora and a random-corpus builder.
"""

from pathlib import Path
from typing import List

import numpy as np
import pytest

from app.core.database import dispose_engines
from app.functions.corpus_parser import parse_corpus
from app.models.corpus import Conjecture, Corpus, Fact, SymbolTable

THREE_FACTS = "F p1: f, a\nF p2: g, a\nF p3: h, f\nC c1: a ; p1\n"

# occ(b_j) sets the smallest t at which the goal symbol a (occ 30) triggers
# the relevant fact {a, b_j}: 3, 6, 10 and 15.
RAMP_OCCURRENCES = (10, 5, 3, 2)
RAMP_DECOYS = 26


def ramp_corpus_text() -> str:
    lines: List[str] = []
    relevant = []
    for j, occ in enumerate(RAMP_OCCURRENCES):
        name = f"r{j}"
        relevant.append(name)
        lines.append(f"F {name}: a, b{j}")
        lines.extend(f"F fill{j}_{i}: b{j}" for i in range(occ - 1))
    lines.extend(f"F decoy{i}: a, u{i}" for i in range(RAMP_DECOYS))
    lines.append(f"C goal: a ; {' '.join(relevant)}")
    return "\n".join(lines) + "\n"


def random_corpus(rng: np.random.Generator, max_facts: int = 12, max_symbols: int = 6) -> Corpus:
    """Random corpus with every fact accessible and one random conjecture."""
    n_symbols = int(rng.integers(1, max_symbols + 1))
    n_facts = int(rng.integers(1, max_facts + 1))
    facts = []
    for i in range(n_facts):
        size = int(rng.integers(1, n_symbols + 1))
        chosen = rng.choice(n_symbols, size=size, replace=False)
        facts.append(Fact(f"p{i}", frozenset(int(s) for s in chosen)))
    names = frozenset(f.name for f in facts)
    goal_size = int(rng.integers(1, n_symbols + 1))
    goal = frozenset(int(s) for s in rng.choice(n_symbols, size=goal_size, replace=False))
    required = frozenset([facts[int(rng.integers(n_facts))].name])
    accessible = names
    if rng.random() < 0.3:
        dropped = {f.name for f in facts if rng.random() < 0.3} - required
        accessible = names - dropped
    conjecture = Conjecture("c0", goal, required, accessible)
    symbols = SymbolTable(tuple(f"s{i}" for i in range(n_symbols)))
    return Corpus(symbols, tuple(facts), (conjecture,))


@pytest.fixture
def three_fact_corpus() -> Corpus:
    return parse_corpus(THREE_FACTS)


@pytest.fixture
def ramp_corpus() -> Corpus:
    return parse_corpus(ramp_corpus_text())


@pytest.fixture
def three_fact_file(tmp_path: Path) -> Path:
    path = tmp_path / "three.txt"
    path.write_text(THREE_FACTS, encoding="utf-8")
    return path


@pytest.fixture
def ramp_file(tmp_path: Path) -> Path:
    path = tmp_path / "ramp.txt"
    path.write_text(ramp_corpus_text(), encoding="utf-8")
    return path


@pytest.fixture(autouse=True)
def _isolated_ledger(monkeypatch):
    """Keep settings from the developer's environment out of the tests."""
    for var in ("SINE_TUNE_DATABASE_URL", "SINE_TUNE_LEDGER_ENABLED", "SINE_TUNE_OUTPUT_DIR"):
        monkeypatch.delenv(var, raising=False)
    yield
    dispose_engines()
