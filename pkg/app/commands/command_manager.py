"""
Command manager for routing a validated RunConfig to its command.
"""

import logging
from typing import Dict, Optional, Type

from pydantic import ValidationError

from app.commands.base import EXIT_INTERNAL, EXIT_USAGE, BaseCommand, CommandResult
from app.commands.baseline_command import BaselineCommand
from app.commands.command_enum import TunerCommand
from app.commands.gen_command import GenCommand
from app.commands.grid_mixed_command import GridMixedCommand
from app.commands.runs_command import RunsCommand
from app.commands.select_command import SelectCommand
from app.commands.tune_command import TuneCommand
from app.core.config import RunConfig, Settings
from app.core.errors import ObjectiveError, TunerError

logger = logging.getLogger(__name__)


class CommandManager:
    """Manages command execution and routing."""

    def __init__(self):
        self._commands: Dict[TunerCommand, Type[BaseCommand]] = {}
        self._register_commands()

    def _register_commands(self):
        """Register all available commands."""
        self._commands[TunerCommand.SELECT] = SelectCommand
        self._commands[TunerCommand.TUNE] = TuneCommand
        self._commands[TunerCommand.BASELINE] = BaselineCommand
        self._commands[TunerCommand.GRID_MIXED] = GridMixedCommand
        self._commands[TunerCommand.GEN] = GenCommand
        self._commands[TunerCommand.RUNS] = RunsCommand

    def lookup(self, command_name: str) -> Optional[TunerCommand]:
        name = command_name.lower().strip()
        for cmd in TunerCommand:
            if cmd.value == name:
                return cmd
        return None

    def execute_command(
        self, config: RunConfig, settings: Optional[Settings] = None
    ) -> CommandResult:
        """
        Execute the command named by ``config.command``.

        Input and usage errors map to exit code 2, anything unexpected to 1.
        """
        command_enum = self.lookup(config.command)
        if command_enum is None or command_enum not in self._commands:
            return CommandResult(
                False,
                f"Unknown command: {config.command}",
                {"available_commands": self.get_available_commands()},
                exit_code=EXIT_USAGE,
            )

        command = self._commands[command_enum](config, settings)
        try:
            return command.execute()
        except ObjectiveError as e:
            logger.debug("objective failed", exc_info=True)
            return CommandResult(False, str(e), {}, exit_code=EXIT_INTERNAL)
        except (TunerError, ValidationError, OSError) as e:
            logger.debug("command %s rejected its input", config.command, exc_info=True)
            return CommandResult(False, str(e), {}, exit_code=EXIT_USAGE)
        except Exception as e:
            logger.exception("command %s failed", config.command)
            return CommandResult(
                False, f"Error executing command: {e}", {}, exit_code=EXIT_INTERNAL
            )

    def get_help(self, command_name: str) -> str:
        command_enum = self.lookup(command_name)
        if command_enum is None:
            return f"Unknown command: {command_name}"
        return self._commands[command_enum].get_help()

    def get_available_commands(self) -> list:
        """Get list of available command names."""
        return [cmd.value for cmd in self._commands.keys()]


# Global command manager instance
command_manager = CommandManager()
