"""
Baseline command: grid search or epsilon-greedy search with the same
artifacts as the tune command.
"""

import numpy as np

from app.commands.base import CommandResult, TuningCommand
from app.functions.bayesopt import epsilon_greedy, grid_search
from app.services.objective import SineObjective


class BaselineCommand(TuningCommand):
    """Non-Bayesian reference searches."""

    def execute(self) -> CommandResult:
        space, pinned = self.search_space()
        cfg = self.config
        if cfg.mode == "grid":
            steps = self.grid_steps_for(space)
            settings = {"pinned": pinned, "mode": "grid", "grid_steps": steps}
        else:
            settings = {
                "pinned": pinned,
                "mode": "epsilon",
                "epsilon": cfg.epsilon,
                "radius": cfg.radius,
                "evaluations": cfg.evaluations,
                "seed": cfg.seed,
            }
        corpus = self.load_corpus()

        with SineObjective(corpus, space, pinned, threads=cfg.threads) as objective:
            if cfg.mode == "grid":
                run = grid_search(objective, space, steps)
            else:
                run = epsilon_greedy(
                    objective,
                    space,
                    epsilon=cfg.epsilon,
                    n_evaluations=cfg.evaluations,
                    neighborhood_radius=cfg.radius,
                    rng=np.random.default_rng(cfg.seed),
                )
            summary, paths = self.write_run_artifacts(run, objective, settings=settings)

        return CommandResult(
            True,
            f"{run.method}: best S = {summary.best_score:.6g} at {summary.best_params} "
            f"after {summary.evaluations} evaluations",
            self.summary_data(summary, paths),
        )

    @classmethod
    def get_help(cls) -> str:
        return """
Baseline Command Help
=====================

--mode grid     exhaustive grid, --grid-steps N or TxGxK points per axis
--mode epsilon  epsilon-greedy: --evaluations, --epsilon, --radius

Writes history.csv and summary.json in the same format as 'tune'.
"""
