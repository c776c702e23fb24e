"""
Select command: run SInE at fixed parameters and score the recommendations.
"""

import logging

from app.commands.base import BaseCommand, CommandResult
from app.functions.metrics import evaluate_selection
from app.functions.reports import (
    scores_csv,
    selection_csv,
    selection_summary,
    write_json,
    write_text,
)
from app.functions.sine import SineParams

logger = logging.getLogger(__name__)


class SelectCommand(BaseCommand):
    """Recommend premises for every conjecture of a corpus."""

    def execute(self) -> CommandResult:
        params = SineParams(t=self.config.t, g=self.config.g, k=self.config.k)
        corpus = self.load_corpus()
        report = evaluate_selection(corpus, params, threads=self.config.threads)

        paths = {
            "selection": write_text(self.output_dir / "selection.csv", selection_csv(report)),
            "scores": write_text(self.output_dir / "scores.csv", scores_csv(report)),
            "summary": write_json(self.output_dir / "summary.json", selection_summary(report)),
        }
        for name, path in paths.items():
            logger.info("wrote %s to %s", name, path)

        data = {
            "params": params.as_dict(),
            "S": report.total,
            "proofs_found": report.proofs_found_fraction,
            "mean_recommended": report.mean_recommended,
        }
        data.update({f"{name}_file": str(path) for name, path in paths.items()})
        return CommandResult(
            True,
            f"S = {report.total:.6g}, proofs found = {report.proofs_found_fraction:.1%}",
            data,
        )

    @classmethod
    def get_help(cls) -> str:
        return """
Select Command Help
===================

Runs SInE with fixed parameters on every conjecture and writes:
- selection.csv  conjecture,recommended_facts
- scores.csv     conjecture,S_i,recommended,intersection
- summary.json   total S, proofs-found fraction, params

Usage:
  sine-tune select --corpus corpus.txt --t 1.5 --g 2 --k 3 --out runs/
"""
