"""
Application configuration management.

Process-wide defaults come from the environment (prefix ``SINE_TUNE_``) or a
``.env`` file; per-run parameters are validated into a RunConfig before any
work starts.
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.core.errors import TunerError
from app.utils.helpers import parse_range, parse_steps


def _default_threads() -> int:
    return os.cpu_count() or 1


class Settings(BaseSettings):
    """Application settings."""

    model_config = SettingsConfigDict(
        env_prefix="SINE_TUNE_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    app_name: str = "SInE Bayesian Tuner"
    app_version: str = "1.0.0"

    output_dir: Path = Path("runs")
    threads: int = Field(default_factory=_default_threads, ge=1)
    log_level: str = "INFO"

    # Run ledger; None means <output_dir>/runs.db
    database_url: Optional[str] = None
    database_echo: bool = False
    ledger_enabled: bool = True

    def ledger_url(self, output_dir: Optional[Path] = None) -> str:
        """Resolve the SQLAlchemy URL of the run ledger."""
        if self.database_url:
            return self.database_url
        directory = Path(output_dir or self.output_dir)
        return f"sqlite:///{directory / 'runs.db'}"


def get_settings() -> Settings:
    """Get settings instance lazily."""
    return Settings()


class RunConfig(BaseModel):
    """
    Validated parameters of one CLI invocation.

    Range fields hold ``(low, high)`` pairs; ``low == high`` pins the
    parameter. Sub-models (SineParams, SearchSpace, TuneConfig) are derived
    from these fields by the commands and validate again on construction.
    """

    model_config = ConfigDict(extra="forbid")

    command: str
    corpus_path: Optional[Path] = None
    output_dir: Path = Path("runs")
    seed: int = Field(default=0, ge=0)
    threads: int = Field(default=1, ge=1)
    ledger: bool = True
    database_url: Optional[str] = None

    # select
    t: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    g: int = Field(default=1, ge=1)
    k: int = Field(default=1, ge=0)

    # search space
    t_range: Tuple[float, float] = (0.0, 20.0)
    g_range: Tuple[int, int] = (1, 128)
    k_range: Tuple[int, int] = (0, 256)

    # tune
    beta: float = Field(default=2.0, ge=0, allow_inf_nan=False)
    starts: int = Field(default=2, ge=1)
    iters: int = Field(default=3, ge=0)
    candidates: int = Field(default=1000, ge=1)
    exploit_fraction: float = Field(default=0.1, ge=0, le=1)

    # baselines
    mode: str = "grid"
    epsilon: float = Field(default=0.1, ge=0, le=1)
    radius: float = Field(default=0.05, gt=0, le=1)
    evaluations: int = Field(default=30, ge=1)
    grid_steps: Tuple[int, ...] = (5, 5, 5)

    # gen
    facts: int = Field(default=100, ge=1)
    symbols: int = Field(default=40, ge=1)
    conjectures: int = Field(default=50, ge=1)
    truth_t: float = Field(default=2.0, gt=0, allow_inf_nan=False)
    truth_g: int = Field(default=3, ge=1)
    truth_k: int = Field(default=2, ge=0)

    # runs
    limit: int = Field(default=10, ge=1)

    @field_validator("t_range", mode="before")
    @classmethod
    def _parse_t_range(cls, value: Any) -> Any:
        return parse_range(value) if isinstance(value, str) else value

    @field_validator("g_range", "k_range", mode="before")
    @classmethod
    def _parse_int_range(cls, value: Any) -> Any:
        return parse_range(value, integer=True) if isinstance(value, str) else value

    @field_validator("grid_steps", mode="before")
    @classmethod
    def _parse_grid_steps(cls, value: Any) -> Any:
        if isinstance(value, (str, int)):
            return parse_steps(value, 3)
        return value

    @field_validator("t_range", "g_range", "k_range")
    @classmethod
    def _check_range(cls, value: Tuple[Any, Any]) -> Tuple[Any, Any]:
        low, high = value
        if low > high:
            raise ValueError(f"range low {low} exceeds high {high}")
        return value

    @field_validator("mode")
    @classmethod
    def _check_mode(cls, value: str) -> str:
        if value not in ("grid", "epsilon"):
            raise ValueError("mode must be 'grid' or 'epsilon'")
        return value


def load_config_file(path: Path) -> Dict[str, Any]:
    """Read a JSON config file whose keys mirror the CLI flags."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise TunerError(f"config file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise TunerError(f"config file {path} is not valid JSON: {e}") from e

    if not isinstance(data, dict):
        raise TunerError(f"config file {path} must hold a JSON object")

    return {key.replace("-", "_"): value for key, value in data.items()}
