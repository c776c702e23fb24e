"""
Line-oriented corpus reader and writer, plus symbol occurrence counts.

Format (UTF-8, one record per line, ``#`` starts a comment line)::

    F <name>: <sym>[, <sym>]*
    C <name>: <sym>[, <sym>]* ; <fact>[ <fact>]* [; <fact>[ <fact>]*]

The first ``;`` group of a conjecture lists the required facts, the
optional second group the accessible ones (default: every fact).
"""

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

import numpy as np

from app.core.errors import CorpusError
from app.models.corpus import Conjecture, Corpus, Fact, SymbolTable

_TOKEN = re.compile(r"[^\s:,;#]+")
_RECORD = re.compile(r"^(?P<kind>[FC])\s+(?P<name>[^\s:,;#]+)\s*:(?P<body>.*)$")


@dataclass
class _PendingConjecture:
    line: int
    name: str
    goal: FrozenSet[int]
    required: Tuple[str, ...]
    accessible: Optional[Tuple[str, ...]]


class _Interner:
    def __init__(self) -> None:
        self.names: List[str] = []
        self.ids: Dict[str, int] = {}

    def __call__(self, name: str) -> int:
        symbol_id = self.ids.get(name)
        if symbol_id is None:
            symbol_id = len(self.names)
            self.ids[name] = symbol_id
            self.names.append(name)
        return symbol_id


def _check_token(token: str, what: str, line: int) -> str:
    if not _TOKEN.fullmatch(token):
        raise CorpusError(f"malformed {what} {token!r}", line=line)
    return token


def _parse_symbols(text: str, line: int, intern: _Interner) -> FrozenSet[int]:
    text = text.strip()
    if not text:
        raise CorpusError("empty symbol list", line=line)
    ids = []
    for part in text.split(","):
        token = _check_token(part.strip(), "symbol", line)
        ids.append(intern(token))
    return frozenset(ids)


def _parse_fact_names(text: str, line: int) -> Tuple[str, ...]:
    return tuple(_check_token(token, "fact name", line) for token in text.split())


def parse_corpus(text: str) -> Corpus:
    """
    Parse a corpus document.

    Raises:
        CorpusError: malformed line, duplicate name, empty symbol list,
            unknown or inaccessible fact reference. The error names the
            offending line.
    """
    intern = _Interner()
    facts: List[Fact] = []
    names: Dict[str, int] = {}
    pending: List[_PendingConjecture] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue

        match = _RECORD.match(stripped)
        if not match:
            raise CorpusError(f"malformed line: {stripped!r}", line=line_no)

        kind, name, body = match.group("kind"), match.group("name"), match.group("body")
        if name in names:
            raise CorpusError(
                f"duplicate name {name!r} (first defined at line {names[name]})",
                line=line_no,
            )
        names[name] = line_no

        if kind == "F":
            if ";" in body:
                raise CorpusError("fact lines take no ';' groups", line=line_no)
            facts.append(Fact(name, _parse_symbols(body, line_no, intern)))
            continue

        groups = body.split(";")
        if len(groups) not in (2, 3):
            raise CorpusError(
                "conjecture needs 'symbols ; required [; accessible]'", line=line_no
            )
        goal = _parse_symbols(groups[0], line_no, intern)
        required = _parse_fact_names(groups[1], line_no)
        if not required:
            raise CorpusError(f"conjecture {name!r} has no required facts", line=line_no)
        accessible = _parse_fact_names(groups[2], line_no) if len(groups) == 3 else None
        pending.append(_PendingConjecture(line_no, name, goal, required, accessible))

    fact_names = {fact.name for fact in facts}
    all_facts = frozenset(fact_names)
    conjectures = []
    for item in pending:
        referenced = item.required + (item.accessible or ())
        for fact_name in referenced:
            if fact_name not in fact_names:
                raise CorpusError(f"unknown fact {fact_name!r}", line=item.line)
        accessible = frozenset(item.accessible) if item.accessible is not None else all_facts
        try:
            conjectures.append(
                Conjecture(item.name, item.goal, frozenset(item.required), accessible)
            )
        except CorpusError as e:
            raise CorpusError(e.reason, line=item.line) from e

    return Corpus(SymbolTable(tuple(intern.names)), tuple(facts), tuple(conjectures))


def load_corpus(path: Union[str, Path]) -> Corpus:
    """Read and parse a corpus file; errors carry the path."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise CorpusError("corpus file not found", path=path) from e
    except UnicodeDecodeError as e:
        raise CorpusError(f"corpus file is not UTF-8: {e}", path=path) from e

    try:
        return parse_corpus(text)
    except CorpusError as e:
        raise e.with_path(path) from e


def render_corpus(corpus: Corpus) -> str:
    """Write a corpus back to the line format; parse_corpus inverts it."""
    names = corpus.symbols.names
    fact_order = {fact.name: i for i, fact in enumerate(corpus.facts)}
    all_facts = frozenset(fact_order)

    def symbols(ids: FrozenSet[int]) -> str:
        return ", ".join(names[i] for i in sorted(ids))

    def fact_list(items: FrozenSet[str]) -> str:
        return " ".join(sorted(items, key=fact_order.__getitem__))

    lines = [f"F {fact.name}: {symbols(fact.symbols)}" for fact in corpus.facts]
    for conjecture in corpus.conjectures:
        line = f"C {conjecture.name}: {symbols(conjecture.goal_symbols)} ; {fact_list(conjecture.required)}"
        if conjecture.accessible != all_facts:
            line += f" ; {fact_list(conjecture.accessible)}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def symbol_occurrences(corpus: Corpus) -> np.ndarray:
    """
    occ(s) for every symbol id: the number of facts containing s.

    Goal-only symbols count 0.
    """
    occ = np.zeros(len(corpus.symbols), dtype=np.int64)
    for fact in corpus.facts:
        for symbol_id in fact.symbols:
            occ[symbol_id] += 1
    return occ
