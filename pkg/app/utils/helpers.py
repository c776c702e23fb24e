"""
Utility functions and helpers.
"""

import csv
import io
import math
from typing import Iterable, List, Sequence, Tuple, Union

from app.core.errors import SearchSpaceError

Number = Union[int, float]


def parse_range(text: str, integer: bool = False) -> Tuple[Number, Number]:
    """
    Parse a ``lo..hi`` range flag.

    Args:
        text: Range text, e.g. ``"0..20"`` or ``"2..2"`` (pinned)
        integer: Require integer bounds

    Returns:
        Tuple (low, high) with low <= high
    """
    if not isinstance(text, str) or ".." not in text:
        raise SearchSpaceError(f"range must look like 'lo..hi', got {text!r}")

    low_text, high_text = (part.strip() for part in text.split("..", 1))
    try:
        if integer:
            low: Number = int(low_text)
            high: Number = int(high_text)
        else:
            low = float(low_text)
            high = float(high_text)
    except ValueError as e:
        kind = "integer" if integer else "numeric"
        raise SearchSpaceError(f"range {text!r} must have {kind} bounds") from e

    if not (math.isfinite(low) and math.isfinite(high)):
        raise SearchSpaceError(f"range {text!r} must be finite")
    if low > high:
        raise SearchSpaceError(f"range {text!r} has low > high")
    return low, high


def parse_steps(text: Union[str, int, Sequence[int]], dims: int) -> Tuple[int, ...]:
    """Parse ``--grid-steps``: a single count or ``AxBxC`` per dimension."""
    if isinstance(text, int):
        values: List[int] = [text]
    elif isinstance(text, str):
        try:
            values = [int(part) for part in text.lower().split("x")]
        except ValueError as e:
            raise SearchSpaceError(f"grid steps {text!r} are not integers") from e
    else:
        values = [int(v) for v in text]

    if len(values) == 1:
        values = values * dims
    if len(values) != dims:
        raise SearchSpaceError(f"expected {dims} grid step counts, got {len(values)}")
    if any(v < 1 for v in values):
        raise SearchSpaceError("grid steps must be >= 1")
    return tuple(values)


def format_number(value: Number) -> str:
    """Stable text form for CSV output: ints as ints, floats via repr."""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def rows_to_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    """Render rows to CSV text with ``\\n`` line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()
