"""
Logging setup shared by the CLI and the library modules.
"""

import logging
from typing import Union

from rich.console import Console
from rich.logging import RichHandler

_LOG_FORMAT = "%(message)s"
_configured = False


def configure_logging(level: Union[int, str] = "INFO", force: bool = False) -> None:
    """Attach a RichHandler writing to stderr to the root logger, once."""
    global _configured

    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO

    root = logging.getLogger()
    if _configured and not force:
        root.setLevel(level)
        return

    for handler in list(root.handlers):
        if isinstance(handler, RichHandler):
            root.removeHandler(handler)

    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
        markup=False,
    )
    handler.setFormatter(logging.Formatter(_LOG_FORMAT, datefmt="[%X]"))
    root.addHandler(handler)
    root.setLevel(level)
    _configured = True
