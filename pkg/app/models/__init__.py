"""
Models package: the corpus data model and the run ledger.
"""

from .corpus import Conjecture, Corpus, CorpusStats, Fact, Symbol, SymbolTable
from .run import TuningObservation, TuningRun

__all__ = [
    "Conjecture",
    "Corpus",
    "CorpusStats",
    "Fact",
    "Symbol",
    "SymbolTable",
    "TuningObservation",
    "TuningRun",
]
