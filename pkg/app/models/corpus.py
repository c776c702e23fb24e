"""
Corpus data model: interned symbols, facts (premises) and conjectures.

A Corpus is immutable once built and can be shared between threads.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, Tuple

from app.core.errors import CorpusError


@dataclass(frozen=True)
class Symbol:
    """An interned function or predicate symbol."""

    id: int
    name: str


@dataclass(frozen=True)
class Fact:
    """A premise and the set of symbols occurring in it."""

    name: str
    symbols: FrozenSet[int]

    def __post_init__(self) -> None:
        if not self.name:
            raise CorpusError("fact name must be non-empty")
        if not self.symbols:
            raise CorpusError(f"fact {self.name!r} has no symbols")


@dataclass(frozen=True)
class Conjecture:
    """
    A goal with its proof dependencies.

    ``required`` holds the premises a proof used, ``accessible`` the
    premises a selector may recommend. ``required`` is always a subset of
    ``accessible``.
    """

    name: str
    goal_symbols: FrozenSet[int]
    required: FrozenSet[str]
    accessible: FrozenSet[str]

    def __post_init__(self) -> None:
        if not self.name:
            raise CorpusError("conjecture name must be non-empty")
        if not self.goal_symbols:
            raise CorpusError(f"conjecture {self.name!r} has no goal symbols")
        if not self.required:
            raise CorpusError(f"conjecture {self.name!r} has no required facts")
        missing = self.required - self.accessible
        if missing:
            raise CorpusError(
                f"conjecture {self.name!r} requires inaccessible facts: "
                + ", ".join(sorted(missing))
            )


@dataclass(frozen=True)
class SymbolTable:
    """Bijective name <-> dense id mapping."""

    names: Tuple[str, ...]
    _ids: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        ids = {name: i for i, name in enumerate(self.names)}
        if len(ids) != len(self.names):
            raise CorpusError("symbol names must be unique")
        object.__setattr__(self, "_ids", ids)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[Symbol]:
        for i, name in enumerate(self.names):
            yield Symbol(i, name)

    def __contains__(self, name: object) -> bool:
        return name in self._ids

    def id_of(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise KeyError(f"unknown symbol {name!r}") from None

    def name_of(self, symbol_id: int) -> str:
        return self.names[symbol_id]


@dataclass(frozen=True)
class CorpusStats:
    facts: int
    conjectures: int
    symbols: int
    mean_symbols_per_fact: float
    mean_required: float


@dataclass(frozen=True)
class Corpus:
    """A problem set: symbol table, ordered facts and ordered conjectures."""

    symbols: SymbolTable
    facts: Tuple[Fact, ...]
    conjectures: Tuple[Conjecture, ...]
    _fact_ids: Dict[str, int] = field(init=False, repr=False, compare=False)
    _conjecture_ids: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        fact_ids: Dict[str, int] = {}
        for i, fact in enumerate(self.facts):
            if fact.name in fact_ids:
                raise CorpusError(f"duplicate fact name {fact.name!r}")
            fact_ids[fact.name] = i

        conjecture_ids: Dict[str, int] = {}
        for i, conjecture in enumerate(self.conjectures):
            if conjecture.name in fact_ids or conjecture.name in conjecture_ids:
                raise CorpusError(f"duplicate name {conjecture.name!r}")
            conjecture_ids[conjecture.name] = i

        n_symbols = len(self.symbols)
        for fact in self.facts:
            if any(s < 0 or s >= n_symbols for s in fact.symbols):
                raise CorpusError(f"fact {fact.name!r} references an unknown symbol")
        for conjecture in self.conjectures:
            if any(s < 0 or s >= n_symbols for s in conjecture.goal_symbols):
                raise CorpusError(
                    f"conjecture {conjecture.name!r} references an unknown symbol"
                )
            unknown = conjecture.accessible - fact_ids.keys()
            if unknown:
                raise CorpusError(
                    f"conjecture {conjecture.name!r} references unknown facts: "
                    + ", ".join(sorted(unknown))
                )

        object.__setattr__(self, "_fact_ids", fact_ids)
        object.__setattr__(self, "_conjecture_ids", conjecture_ids)

    @property
    def fact_names(self) -> Tuple[str, ...]:
        return tuple(fact.name for fact in self.facts)

    def symbol_id(self, name: str) -> int:
        return self.symbols.id_of(name)

    def fact_id(self, name: str) -> int:
        try:
            return self._fact_ids[name]
        except KeyError:
            raise KeyError(f"unknown fact {name!r}") from None

    def fact(self, name: str) -> Fact:
        return self.facts[self.fact_id(name)]

    def conjecture(self, name: str) -> Conjecture:
        try:
            return self.conjectures[self._conjecture_ids[name]]
        except KeyError:
            raise KeyError(f"unknown conjecture {name!r}") from None

    def stats(self) -> CorpusStats:
        n_facts = len(self.facts)
        n_conj = len(self.conjectures)
        return CorpusStats(
            facts=n_facts,
            conjectures=n_conj,
            symbols=len(self.symbols),
            mean_symbols_per_fact=(
                sum(len(f.symbols) for f in self.facts) / n_facts if n_facts else 0.0
            ),
            mean_required=(
                sum(len(c.required) for c in self.conjectures) / n_conj
                if n_conj
                else 0.0
            ),
        )
