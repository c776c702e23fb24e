"""
Gen command: write a synthetic corpus.
"""

import logging

from app.commands.base import BaseCommand, CommandResult
from app.functions.corpus_generator import generate_corpus
from app.functions.corpus_parser import render_corpus
from app.functions.reports import write_text
from app.functions.sine import SineParams

logger = logging.getLogger(__name__)


class GenCommand(BaseCommand):
    """Generate a Zipf-distributed corpus with SInE-derived proof dependencies."""

    def execute(self) -> CommandResult:
        cfg = self.config
        truth = SineParams(t=cfg.truth_t, g=cfg.truth_g, k=cfg.truth_k)
        corpus = generate_corpus(cfg.facts, cfg.symbols, cfg.conjectures, cfg.seed, truth)
        path = write_text(self.output_dir / "corpus.txt", render_corpus(corpus))
        logger.info("wrote corpus to %s", path)

        stats = corpus.stats()
        return CommandResult(
            True,
            f"wrote {stats.facts} facts and {stats.conjectures} conjectures to {path}",
            {
                "corpus_file": str(path),
                "facts": stats.facts,
                "conjectures": stats.conjectures,
                "symbols": stats.symbols,
                "mean_required": round(stats.mean_required, 3),
                "truth": truth.as_dict(),
            },
        )

    @classmethod
    def get_help(cls) -> str:
        return """
Gen Command Help
================

Writes <out>/corpus.txt with --facts facts over --symbols Zipf-distributed
symbols and --conjectures conjectures whose required facts come from SInE
at the hidden --truth-t/--truth-g/--truth-k. Same seed, same bytes.
"""
