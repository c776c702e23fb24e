"""
Command enumeration for the SInE tuner.
Defines all commands the CLI can run.
"""

from enum import Enum
from typing import Dict, List


class TunerCommand(Enum):
    """Enumeration of all available tuner commands."""

    SELECT = "select"
    TUNE = "tune"
    BASELINE = "baseline"
    GRID_MIXED = "grid-mixed"
    GEN = "gen"
    RUNS = "runs"


class CommandInfo:
    """Information about a command."""

    def __init__(self, command: TunerCommand, description: str, category: str):
        self.command = command
        self.description = description
        self.category = category


COMMAND_INFO: Dict[TunerCommand, CommandInfo] = {
    TunerCommand.SELECT: CommandInfo(
        TunerCommand.SELECT,
        "Run SInE at fixed (t, g, k) and score the recommendations",
        "Premise Selection",
    ),
    TunerCommand.TUNE: CommandInfo(
        TunerCommand.TUNE,
        "Tune (t, g, k) with GP-UCB Bayesian optimisation",
        "Parameter Tuning",
    ),
    TunerCommand.BASELINE: CommandInfo(
        TunerCommand.BASELINE,
        "Tune with grid search or epsilon-greedy search",
        "Parameter Tuning",
    ),
    TunerCommand.GRID_MIXED: CommandInfo(
        TunerCommand.GRID_MIXED,
        "Grid over (g, k), GP-UCB over t in every cell",
        "Parameter Tuning",
    ),
    TunerCommand.GEN: CommandInfo(
        TunerCommand.GEN,
        "Generate a synthetic corpus",
        "Corpus Tools",
    ),
    TunerCommand.RUNS: CommandInfo(
        TunerCommand.RUNS,
        "List recent runs from the run ledger",
        "Maintenance",
    ),
}


def get_commands_by_category() -> Dict[str, List[CommandInfo]]:
    """Get commands organized by category."""
    categories: Dict[str, List[CommandInfo]] = {}

    for cmd_info in COMMAND_INFO.values():
        if cmd_info.category not in categories:
            categories[cmd_info.category] = []
        categories[cmd_info.category].append(cmd_info)

    return categories


def get_all_commands() -> List[CommandInfo]:
    """Get all commands as a list."""
    return list(COMMAND_INFO.values())
