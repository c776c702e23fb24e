"""
Tune command: GP-UCB over (t, g, k) with the aggregate score as objective.
"""

import logging

from app.commands.base import CommandResult, TuningCommand
from app.functions.bayesopt import optimize, posterior_curve
from app.functions.reports import posterior_csv, write_text
from app.services.objective import SineObjective

logger = logging.getLogger(__name__)


class TuneCommand(TuningCommand):
    """Bayesian optimisation of the SInE parameters."""

    def execute(self) -> CommandResult:
        space, pinned = self.search_space()
        tune_config = self.tune_config()
        corpus = self.load_corpus()

        with SineObjective(corpus, space, pinned, threads=self.config.threads) as objective:
            run = optimize(objective, space, tune_config)
            summary, paths = self.write_run_artifacts(
                run,
                objective,
                settings={"pinned": pinned, **tune_config.model_dump()},
            )

        if space.size == 1 and space.dims[0].kind == "continuous":
            curve = posterior_curve(run, tune_config)
            paths["posterior"] = write_text(
                self.output_dir / "posterior.csv", posterior_csv(curve, space.dims[0].name)
            )
            logger.info("wrote posterior to %s", paths["posterior"])

        return CommandResult(
            True,
            f"best S = {summary.best_score:.6g} at {summary.best_params} "
            f"after {summary.evaluations} evaluations",
            self.summary_data(summary, paths),
        )

    @classmethod
    def get_help(cls) -> str:
        return """
Tune Command Help
=================

GP-UCB over the SInE parameters: --starts random points, then --iters
proposals maximising mean + beta * sd of a Matern-5/2 GP posterior.

Ranges use lo..hi; lo == hi pins a parameter. With only t left free the
command also writes posterior.csv (t,posterior_mean,posterior_sd,ucb).

Usage:
  sine-tune tune --corpus corpus.txt --starts 2 --iters 3 --seed 7 --out runs/
"""
