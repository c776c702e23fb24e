"""
Runs command: list recent entries of the run ledger.
"""

from app.commands.base import BaseCommand, CommandResult
from app.core.database import create_tables, get_db
from app.models.run import TuningRun


class RunsCommand(BaseCommand):
    """Show the most recent tuning runs."""

    def execute(self) -> CommandResult:
        url = self.config.database_url or self.settings.ledger_url(self.output_dir)
        create_tables(url, echo=self.settings.database_echo)

        db_gen = get_db(url)
        db = next(db_gen)
        try:
            runs = [run.get_summary() for run in TuningRun.recent(db, self.config.limit)]
        finally:
            db_gen.close()

        if not runs:
            return CommandResult(True, f"no runs recorded in {url}", {"runs": []})
        return CommandResult(True, f"{len(runs)} most recent runs in {url}", {"runs": runs})

    @classmethod
    def get_help(cls) -> str:
        return """
Runs Command Help
=================

Lists the last --limit runs stored by tune, baseline and grid-mixed in the
ledger (<out>/runs.db unless SINE_TUNE_DATABASE_URL is set).
"""
