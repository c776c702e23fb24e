"""
Base command classes and interfaces.
"""

import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from app.core.config import RunConfig, Settings, get_settings
from app.core.database import create_tables, get_db
from app.core.errors import CorpusError, SearchSpaceError
from app.functions.bayesopt import Dimension, SearchSpace, TuneConfig, TuneRun
from app.functions.corpus_parser import load_corpus
from app.functions.reports import TuneSummary, history_csv, tune_summary, write_json, write_text
from app.models.corpus import Corpus
from app.models.run import TuningRun
from app.services.objective import SineObjective

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2


class CommandResult:
    """Standard result format for commands."""

    def __init__(
        self,
        success: bool,
        message: str,
        data: Optional[Dict[str, Any]] = None,
        exit_code: Optional[int] = None,
    ):
        self.success = success
        self.message = message
        self.data = data or {}
        self.exit_code = exit_code if exit_code is not None else (
            EXIT_OK if success else EXIT_INTERNAL
        )


class BaseCommand(ABC):
    """Base class for all tuner commands."""

    def __init__(self, config: RunConfig, settings: Optional[Settings] = None):
        self.config = config
        self.settings = settings or get_settings()

    @abstractmethod
    def execute(self) -> CommandResult:
        """Execute the command and return result."""

    @classmethod
    @abstractmethod
    def get_help(cls) -> str:
        """Get help text for the command."""

    @property
    def output_dir(self) -> Path:
        return Path(self.config.output_dir)

    def load_corpus(self) -> Corpus:
        if self.config.corpus_path is None:
            raise CorpusError("no corpus given (use --corpus)")
        corpus = load_corpus(self.config.corpus_path)
        if not corpus.conjectures:
            raise CorpusError("corpus has no conjectures", path=self.config.corpus_path)
        stats = corpus.stats()
        logger.info(
            "loaded %s: %d facts, %d conjectures, %d symbols",
            self.config.corpus_path,
            stats.facts,
            stats.conjectures,
            stats.symbols,
        )
        return corpus


class TuningCommand(BaseCommand):
    """Shared plumbing of the commands that search the (t, g, k) space."""

    def search_space(self) -> Tuple[SearchSpace, Dict[str, Any]]:
        """
        Build the search space from the range flags.

        A range with ``low == high`` pins its parameter instead of adding a
        dimension.
        """
        cfg = self.config
        dims: List[Dimension] = []
        pinned: Dict[str, Any] = {}

        t_low, t_high = cfg.t_range
        if t_low == t_high:
            if t_low <= 0:
                raise SearchSpaceError("pinned t must be > 0")
            pinned["t"] = float(t_low)
        else:
            if t_low < 0:
                raise SearchSpaceError("t range must lie in (0, inf)")
            dims.append(
                Dimension(name="t", kind="continuous", low=t_low, high=t_high,
                          exclusive_low=t_low == 0)
            )

        for name, (low, high), minimum in (("g", cfg.g_range, 1), ("k", cfg.k_range, 0)):
            if low < minimum:
                raise SearchSpaceError(f"{name} range must start at >= {minimum}")
            if low == high:
                pinned[name] = int(low)
            else:
                dims.append(Dimension(name=name, kind="integer", low=low, high=high))

        if not dims:
            raise SearchSpaceError("every parameter is pinned; nothing to search")
        return SearchSpace(dims=tuple(dims)), pinned

    def tune_config(self) -> TuneConfig:
        cfg = self.config
        return TuneConfig(
            n_random_starts=cfg.starts,
            n_iterations=cfg.iters,
            beta=cfg.beta,
            candidate_count=cfg.candidates,
            exploit_fraction=cfg.exploit_fraction,
            seed=cfg.seed,
        )

    def grid_steps_for(self, space: SearchSpace) -> List[int]:
        """Pick the per-dimension counts of ``--grid-steps`` (given as t x g x k)."""
        if len(self.config.grid_steps) != 3:
            raise SearchSpaceError("--grid-steps takes one count or three (t x g x k)")
        by_name = dict(zip(("t", "g", "k"), self.config.grid_steps))
        return [by_name[name] for name in space.names]

    def write_run_artifacts(
        self,
        run: TuneRun,
        objective: SineObjective,
        settings: Dict[str, Any],
    ) -> Tuple[TuneSummary, Dict[str, Path]]:
        best_params = objective.params_for(run.incumbent.point)
        best_report = objective.report(best_params)
        summary = tune_summary(
            run,
            best_params.as_dict(),
            best_proofs_found_fraction=best_report.proofs_found_fraction,
            settings=settings,
        )

        paths = {
            "history": write_text(
                self.output_dir / "history.csv", history_csv(run, objective.full_point)
            ),
            "summary": write_json(self.output_dir / "summary.json", summary),
        }
        for name, path in paths.items():
            logger.info("wrote %s to %s", name, path)

        if self.config.ledger and self.settings.ledger_enabled:
            self.record_in_ledger(run, objective, summary)
        return summary, paths

    def record_in_ledger(self, run: TuneRun, objective: SineObjective, summary: TuneSummary) -> None:
        url = self.config.database_url or self.settings.ledger_url(self.output_dir)
        create_tables(url, echo=self.settings.database_echo)
        rows = []
        for obs in run.history:
            values = objective.full_point(obs.point)
            rows.append(
                {
                    "iteration": obs.iteration,
                    "t": float(values["t"]),
                    "g": int(values["g"]),
                    "k": int(values["k"]),
                    "objective": obs.value,
                    "is_incumbent": obs.is_incumbent,
                }
            )

        db_gen = get_db(url)
        db = next(db_gen)
        try:
            entry = TuningRun.record(
                db,
                command=self.config.command,
                method=run.method,
                best_value=summary.best_score,
                best_params=summary.best_params,
                observations=rows,
                corpus_path=str(self.config.corpus_path) if self.config.corpus_path else None,
                seed=self.config.seed,
                objective_seconds=run.objective_seconds,
                model_seconds=run.model_seconds,
                wall_seconds=run.wall_seconds,
            )
            logger.info("recorded run %d in ledger %s", entry.id, url)
        finally:
            db_gen.close()

    @staticmethod
    def summary_data(summary: TuneSummary, paths: Dict[str, Path]) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "method": summary.method,
            "best_score": summary.best_score,
            "best_params": summary.best_params,
            "proofs_found": summary.best_proofs_found_fraction,
            "evaluations": summary.evaluations,
            "objective_seconds": round(summary.wall_time.objective_seconds, 3),
            "model_seconds": round(summary.wall_time.model_seconds, 3),
        }
        data.update({f"{name}_file": str(path) for name, path in paths.items()})
        return data
