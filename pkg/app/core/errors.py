"""
Exception hierarchy for the SInE tuner.

Everything raised on purpose by the library derives from TunerError so the
command layer can tell input problems (exit code 2) from internal failures.
"""

from pathlib import Path
from typing import Any, Optional, Sequence, Union


class TunerError(Exception):
    """Base class for all expected tuner failures."""


class CorpusError(TunerError):
    """A corpus file could not be parsed or violates an invariant."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        path: Optional[Union[str, Path]] = None,
    ):
        self.reason = message
        self.line = line
        self.path = str(path) if path is not None else None
        super().__init__(self._format())

    def _format(self) -> str:
        location = ""
        if self.path and self.line is not None:
            location = f"{self.path}:{self.line}: "
        elif self.path:
            location = f"{self.path}: "
        elif self.line is not None:
            location = f"line {self.line}: "
        return f"{location}{self.reason}"

    def with_path(self, path: Union[str, Path]) -> "CorpusError":
        """Return a copy of this error that also names the file."""
        return CorpusError(self.reason, line=self.line, path=path)


class SearchSpaceError(TunerError, ValueError):
    """A point or range does not fit the search space."""


class FactorizationError(TunerError):
    """The Gram matrix stayed indefinite after jitter escalation."""


class ObjectiveError(TunerError):
    """The objective failed at a specific point."""

    def __init__(self, point: Sequence[Any], cause: BaseException):
        self.point = tuple(point)
        super().__init__(f"objective failed at {self.point}: {cause}")
