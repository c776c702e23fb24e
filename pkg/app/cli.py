#!/usr/bin/env python3
"""
Command-line interface entry point for the SInE tuner.

Values are merged in increasing precedence: built-in defaults, settings from
the environment, the ``--config`` JSON file, then explicit flags.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from app.commands import (
    EXIT_USAGE,
    CommandResult,
    command_manager,
    get_all_commands,
    get_commands_by_category,
)
from app.core.config import RunConfig, get_settings, load_config_file
from app.core.errors import TunerError
from app.utils.logger import configure_logging

logger = logging.getLogger(__name__)

_S = argparse.SUPPRESS


def _common_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", dest="config_file", default=_S, help="JSON file of flag values")
    parent.add_argument("--out", dest="output_dir", default=_S, help="output directory")
    parent.add_argument("--seed", type=int, default=_S)
    parent.add_argument("--threads", type=int, default=_S, help="worker threads per evaluation")
    parent.add_argument("-v", "--verbose", action="store_true", default=False)
    parent.add_argument("--quiet", action="store_true", default=False)
    parent.add_argument("--no-ledger", dest="ledger", action="store_false", default=_S)
    return parent


def _corpus_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--corpus", dest="corpus_path", default=_S, help="corpus file")


def _space_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--t-range", default=_S, help="lo..hi (lo == hi pins t)")
    parser.add_argument("--g-range", default=_S, help="lo..hi (lo == hi pins g)")
    parser.add_argument("--k-range", default=_S, help="lo..hi (lo == hi pins k)")


def _bo_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--beta", type=float, default=_S)
    parser.add_argument("--starts", type=int, default=_S, help="random initial evaluations")
    parser.add_argument("--iters", type=int, default=_S, help="GP-UCB proposals")
    parser.add_argument("--candidates", type=int, default=_S, help="random candidates per proposal")
    parser.add_argument(
        "--exploit-fraction", type=float, default=_S, help="share of iterations run with beta = 0"
    )


def build_parser() -> argparse.ArgumentParser:
    descriptions = {info.command.value: info.description for info in get_all_commands()}
    epilog = "\n".join(
        f"{category}: " + ", ".join(info.command.value for info in infos)
        for category, infos in get_commands_by_category().items()
    )
    parser = argparse.ArgumentParser(
        prog="sine-tune",
        description="Tune SInE premise-selection parameters with Bayesian optimisation.",
        epilog=epilog,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    settings = get_settings()
    parser.add_argument(
        "--version", action="version", version=f"{settings.app_name} {settings.app_version}"
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    common = _common_parser()

    def add(name: str) -> argparse.ArgumentParser:
        return sub.add_parser(
            name,
            parents=[common],
            help=descriptions[name],
            description=descriptions[name],
            epilog=command_manager.get_help(name),
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )

    select = add("select")
    _corpus_flag(select)
    select.add_argument("--t", type=float, default=_S, help="generality tolerance")
    select.add_argument("--g", type=int, default=_S, help="generality threshold")
    select.add_argument("--k", type=int, default=_S, help="recursion depth")

    tune = add("tune")
    _corpus_flag(tune)
    _space_flags(tune)
    _bo_flags(tune)

    baseline = add("baseline")
    _corpus_flag(baseline)
    _space_flags(baseline)
    baseline.add_argument("--mode", choices=["grid", "epsilon"], default=_S)
    baseline.add_argument("--grid-steps", default=_S, help="N or TxGxK points per axis")
    baseline.add_argument("--epsilon", type=float, default=_S)
    baseline.add_argument("--radius", type=float, default=_S)
    baseline.add_argument("--evaluations", type=int, default=_S)

    mixed = add("grid-mixed")
    _corpus_flag(mixed)
    _space_flags(mixed)
    _bo_flags(mixed)
    mixed.add_argument("--grid-steps", default=_S, help="N or TxGxK; t count is ignored")

    gen = add("gen")
    gen.add_argument("--facts", type=int, default=_S)
    gen.add_argument("--symbols", type=int, default=_S)
    gen.add_argument("--conjectures", type=int, default=_S)
    gen.add_argument("--truth-t", type=float, default=_S)
    gen.add_argument("--truth-g", type=int, default=_S)
    gen.add_argument("--truth-k", type=int, default=_S)

    runs = add("runs")
    runs.add_argument("--limit", type=int, default=_S)

    return parser


_CLI_ONLY = {"verbose", "quiet", "config_file"}
_FILE_ALIASES = {"corpus": "corpus_path", "out": "output_dir", "config": "config_file"}
_RUN_COLUMNS = ("id", "command", "method", "best_value", "best_params", "evaluations", "created_at")


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, settings, the config file and flags into a RunConfig."""
    settings = get_settings()
    values: Dict[str, Any] = {
        "output_dir": settings.output_dir,
        "threads": settings.threads,
        "ledger": settings.ledger_enabled,
        "database_url": settings.database_url,
    }
    flags = vars(args)
    if "config_file" in flags:
        from_file = load_config_file(flags["config_file"])
        from_file = {_FILE_ALIASES.get(key, key): value for key, value in from_file.items()}
        for key in ("command", *_CLI_ONLY):
            from_file.pop(key, None)
        values.update(from_file)
    values.update({key: value for key, value in flags.items() if key not in _CLI_ONLY})
    return RunConfig(**values)


def render_result(result: CommandResult, console: Console) -> None:
    if not result.success:
        Console(stderr=True).print(f"[bold red]error:[/bold red] {escape(result.message)}", markup=True)
        return

    console.print(f"[green]{escape(result.message)}[/green]")
    runs: Optional[List[Dict[str, Any]]] = result.data.get("runs")
    if runs:
        table = Table(title="Recent runs")
        for column in _RUN_COLUMNS:
            table.add_column(column)
        for run in runs:
            table.add_row(*(str(run[column]) for column in _RUN_COLUMNS))
        console.print(table)
        return

    table = Table(show_header=True, header_style="bold")
    table.add_column("key")
    table.add_column("value")
    for key, value in result.data.items():
        if key == "runs":
            continue
        table.add_row(key, str(value))
    console.print(table)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the ``sine-tune`` console script."""
    parser = build_parser()
    args = parser.parse_args(argv)

    settings = get_settings()
    level = "DEBUG" if args.verbose else "WARNING" if args.quiet else settings.log_level
    configure_logging(level)

    try:
        config = build_run_config(args)
    except (TunerError, ValidationError) as e:
        Console(stderr=True).print(f"[bold red]invalid arguments:[/bold red] {escape(str(e))}", markup=True)
        return EXIT_USAGE

    logger.debug("run config: %s", config.model_dump(mode="json"))
    result = command_manager.execute_command(config, settings)
    if not args.quiet or not result.success:
        render_result(result, Console())
    return result.exit_code


def run() -> None:
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        sys.exit(130)


if __name__ == "__main__":
    run()
