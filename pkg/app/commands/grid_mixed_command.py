"""
Grid-mixed command: exhaustive grid over g and k, GP-UCB over t in each cell.
"""

import logging

from app.commands.base import CommandResult, TuningCommand
from app.core.errors import SearchSpaceError
from app.functions.bayesopt import grid_bayes_search, posterior_curve
from app.functions.reports import posterior_csv, write_text
from app.services.objective import SineObjective

logger = logging.getLogger(__name__)


class GridMixedCommand(TuningCommand):
    """Hybrid search: grid on the integer parameters, BO on the tolerance."""

    def execute(self) -> CommandResult:
        space, pinned = self.search_space()
        if not space.continuous_dims():
            raise SearchSpaceError("grid-mixed needs a free t range")
        integer_steps = [
            steps
            for dim, steps in zip(space.dims, self.grid_steps_for(space))
            if dim.kind == "integer"
        ]
        tune_config = self.tune_config()
        corpus = self.load_corpus()

        with SineObjective(corpus, space, pinned, threads=self.config.threads) as objective:
            run = grid_bayes_search(objective, space, integer_steps, tune_config)
            summary, paths = self.write_run_artifacts(
                run,
                objective,
                settings={
                    "pinned": pinned,
                    "grid_steps": integer_steps,
                    **tune_config.model_dump(),
                },
            )

        best = run.incumbent
        for fixed, cell_run in run.extra.get("cell_runs", []):
            if cell_run.incumbent.value == best.value and all(
                best.point[space.names.index(name)] == value for name, value in fixed.items()
            ):
                curve = posterior_curve(cell_run, tune_config)
                paths["posterior"] = write_text(
                    self.output_dir / "posterior.csv", posterior_csv(curve, "t")
                )
                logger.info("wrote posterior of cell %s to %s", fixed, paths["posterior"])
                break

        return CommandResult(
            True,
            f"best S = {summary.best_score:.6g} at {summary.best_params} "
            f"after {summary.evaluations} evaluations",
            self.summary_data(summary, paths),
        )

    @classmethod
    def get_help(cls) -> str:
        return """
Grid-Mixed Command Help
=======================

For every (g, k) on the grid given by --grid-steps (g and k counts), runs
GP-UCB over t with --starts/--iters. Writes history.csv, summary.json and
posterior.csv for the best cell.
"""
