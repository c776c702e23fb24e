# Commands package initialization

from .base import EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, BaseCommand, CommandResult, TuningCommand
from .command_enum import (
    COMMAND_INFO,
    CommandInfo,
    TunerCommand,
    get_all_commands,
    get_commands_by_category,
)
from .command_manager import CommandManager, command_manager

__all__ = [
    "EXIT_INTERNAL",
    "EXIT_OK",
    "EXIT_USAGE",
    "BaseCommand",
    "CommandResult",
    "TuningCommand",
    "TunerCommand",
    "CommandInfo",
    "COMMAND_INFO",
    "get_commands_by_category",
    "get_all_commands",
    "CommandManager",
    "command_manager",
]
