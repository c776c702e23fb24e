"""
GP-UCB tuning over a mixed continuous/integer box, plus the grid-search and
epsilon-greedy baselines it is compared against.

The GP works in the unit cube. Integer dimensions are treated as continuous
surrogates there and rounded to the nearest integer only when a point is
decoded for the objective.
"""

import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.errors import ObjectiveError, SearchSpaceError
from app.functions.gaussian_process import (
    GpModel,
    default_kernel_config,
    fit,
    predict_many,
)

logger = logging.getLogger(__name__)

Value = Union[int, float]
Point = Tuple[Value, ...]
Objective = Callable[[Point], float]
ArrayLike = Union[float, np.ndarray]

TERNARY_STEPS = 20


class Dimension(BaseModel):
    """One search axis. ``exclusive_low`` keeps decoded values strictly above ``low``."""

    model_config = ConfigDict(frozen=True)

    name: str
    kind: Literal["continuous", "integer"]
    low: float
    high: float
    exclusive_low: bool = False

    @model_validator(mode="after")
    def _check_bounds(self) -> "Dimension":
        if not (math.isfinite(self.low) and math.isfinite(self.high)):
            raise ValueError(f"{self.name}: bounds must be finite")
        if not self.low < self.high:
            raise ValueError(f"{self.name}: low {self.low} must be < high {self.high}")
        if self.kind == "integer":
            if self.low != int(self.low) or self.high != int(self.high):
                raise ValueError(f"{self.name}: integer bounds must be integral")
            if self.exclusive_low:
                raise ValueError(f"{self.name}: integer dims take inclusive bounds")
        return self

    @property
    def span(self) -> float:
        return self.high - self.low

    def contains(self, value: float) -> bool:
        if self.kind == "integer" and value != int(value):
            return False
        if self.exclusive_low:
            return self.low < value <= self.high
        return self.low <= value <= self.high

    def encode(self, value: float) -> float:
        if not self.contains(value):
            raise SearchSpaceError(f"{self.name}={value} is outside the search space")
        return (float(value) - self.low) / self.span

    def decode(self, u: float) -> Value:
        u = min(max(float(u), 0.0), 1.0)
        value = self.low + u * self.span
        if self.kind == "integer":
            # nearest integer, ties toward high
            rounded = int(math.floor(value + 0.5))
            return int(min(max(rounded, int(self.low)), int(self.high)))
        value = min(value, self.high)
        if self.exclusive_low and value <= self.low:
            value = float(np.nextafter(self.low, np.inf))
        return float(value)

    def grid(self, steps: int) -> List[Value]:
        """Evenly spaced values including the endpoints; integers rounded and de-duplicated."""
        if steps < 1:
            raise SearchSpaceError("grid steps must be >= 1")
        if self.exclusive_low:
            raw = np.linspace(self.low, self.high, steps + 1)[1:]
        else:
            raw = np.linspace(self.low, self.high, steps)

        if self.kind == "continuous":
            return [float(v) for v in raw]

        values: List[Value] = []
        for v in raw:
            rounded = int(min(max(math.floor(float(v) + 0.5), self.low), self.high))
            if rounded not in values:
                values.append(rounded)
        return values


class SearchSpace(BaseModel):
    """Ordered dimensions of the tuning problem."""

    model_config = ConfigDict(frozen=True)

    dims: Tuple[Dimension, ...]

    @model_validator(mode="after")
    def _check_dims(self) -> "SearchSpace":
        if not self.dims:
            raise ValueError("search space needs at least one dimension")
        names = [d.name for d in self.dims]
        if len(set(names)) != len(names):
            raise ValueError("dimension names must be unique")
        return self

    @classmethod
    def sine_default(
        cls,
        t_range: Tuple[float, float] = (0.0, 20.0),
        g_range: Tuple[int, int] = (1, 128),
        k_range: Tuple[int, int] = (0, 256),
    ) -> "SearchSpace":
        return cls(
            dims=(
                Dimension(name="t", kind="continuous", low=t_range[0], high=t_range[1],
                          exclusive_low=t_range[0] <= 0.0),
                Dimension(name="g", kind="integer", low=g_range[0], high=g_range[1]),
                Dimension(name="k", kind="integer", low=k_range[0], high=k_range[1]),
            )
        )

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(d.name for d in self.dims)

    @property
    def size(self) -> int:
        return len(self.dims)

    def continuous_dims(self) -> Tuple[Dimension, ...]:
        return tuple(d for d in self.dims if d.kind == "continuous")

    def integer_dims(self) -> Tuple[Dimension, ...]:
        return tuple(d for d in self.dims if d.kind == "integer")


def encode(space: SearchSpace, point: Sequence[float]) -> np.ndarray:
    """Map a point in original units into the unit cube."""
    if len(point) != space.size:
        raise SearchSpaceError(f"point has {len(point)} coordinates, space has {space.size}")
    return np.array([d.encode(v) for d, v in zip(space.dims, point)], dtype=float)


def decode(space: SearchSpace, vector: Sequence[float]) -> Point:
    """Map a unit-cube vector back to original units, rounding integer dims."""
    if len(vector) != space.size:
        raise SearchSpaceError(f"vector has {len(vector)} coordinates, space has {space.size}")
    return tuple(d.decode(u) for d, u in zip(space.dims, vector))


def ucb(mean: ArrayLike, sd: ArrayLike, beta: float) -> ArrayLike:
    """Upper confidence bound: mean + beta * sd, scalar or elementwise."""
    return mean + beta * sd


class TuneConfig(BaseModel):
    """Budget and acquisition settings of a GP-UCB run."""

    model_config = ConfigDict(frozen=True)

    n_random_starts: int = Field(default=2, ge=1)
    n_iterations: int = Field(default=3, ge=0)
    beta: float = Field(default=2.0, ge=0, allow_inf_nan=False)
    candidate_count: int = Field(default=1000, ge=1)
    seed: int = Field(default=0, ge=0)
    exploit_fraction: float = Field(default=0.1, ge=0, le=1)
    lengthscale: float = Field(default=0.2, gt=0, allow_inf_nan=False)
    nu: float = 2.5

    @property
    def exploit_iterations(self) -> int:
        """Trailing iterations that maximise the posterior mean (beta = 0)."""
        return int(math.floor(self.exploit_fraction * self.n_iterations + 1e-9))


@dataclass(frozen=True)
class Observation:
    iteration: int
    point: Point
    unit: Tuple[float, ...]
    value: float
    is_incumbent: bool


@dataclass(frozen=True)
class TuneRun:
    """History of one tuning run; ``is_incumbent`` marks strict improvements."""

    space: SearchSpace
    history: Tuple[Observation, ...]
    method: str
    objective_seconds: float = 0.0
    model_seconds: float = 0.0
    wall_seconds: float = 0.0
    extra: Dict[str, object] = field(default_factory=dict)

    @property
    def evaluations(self) -> int:
        return len(self.history)

    @property
    def incumbent(self) -> Observation:
        if not self.history:
            raise ValueError("empty run has no incumbent")
        best = self.history[0]
        for obs in self.history[1:]:
            if obs.value > best.value:
                best = obs
        return best

    def best_point(self) -> Dict[str, Value]:
        return dict(zip(self.space.names, self.incumbent.point))

    def incumbent_trace(self) -> List[float]:
        """Best value seen after each evaluation."""
        trace: List[float] = []
        best = -math.inf
        for obs in self.history:
            best = max(best, obs.value)
            trace.append(best)
        return trace


class _Recorder:
    """Evaluates the objective, times it and tracks the incumbent."""

    def __init__(self, objective: Objective, space: SearchSpace):
        self.objective = objective
        self.space = space
        self.history: List[Observation] = []
        self.best = -math.inf
        self.objective_seconds = 0.0
        self.started = time.perf_counter()

    def evaluate(self, unit: np.ndarray, point: Optional[Point] = None) -> Observation:
        """Evaluate at ``unit``; an exact ``point`` skips decoding (grid values)."""
        if point is None:
            point = decode(self.space, unit)
        tick = time.perf_counter()
        try:
            value = float(self.objective(point))
        except Exception as e:
            raise ObjectiveError(point, e) from e
        return self.record(point, value, unit, time.perf_counter() - tick)

    def record(
        self,
        point: Point,
        value: float,
        unit: Sequence[float],
        seconds: float = 0.0,
    ) -> Observation:
        """Append an observation whose value is already known."""
        self.objective_seconds += seconds
        improved = value > self.best
        if improved:
            self.best = value
            logger.info(
                "new incumbent %s = %.6g at evaluation %d",
                dict(zip(self.space.names, point)),
                value,
                len(self.history),
            )
        else:
            logger.debug("evaluated %s = %.6g", point, value)

        obs = Observation(
            iteration=len(self.history),
            point=point,
            unit=tuple(float(u) for u in unit),
            value=value,
            is_incumbent=improved,
        )
        self.history.append(obs)
        return obs

    def seen(self, point: Point) -> bool:
        return any(obs.point == point for obs in self.history)

    def finish(self, method: str, model_seconds: float = 0.0, **extra: object) -> TuneRun:
        return TuneRun(
            space=self.space,
            history=tuple(self.history),
            method=method,
            objective_seconds=self.objective_seconds,
            model_seconds=model_seconds,
            wall_seconds=time.perf_counter() - self.started,
            extra=dict(extra),
        )


def _acquisition(model: GpModel, beta: float, X: np.ndarray) -> np.ndarray:
    mean, variance = predict_many(model, X)
    return ucb(mean, np.sqrt(variance), beta)


def propose_next(
    model: GpModel,
    space: SearchSpace,
    beta: float,
    rng: np.random.Generator,
    candidate_count: int = 1000,
) -> np.ndarray:
    """
    Maximise the UCB over the unit cube.

    Random candidates pick a starting point, then one pass of ternary search
    per coordinate refines it. Only strict improvements are accepted.
    """
    d = space.size
    candidates = rng.random((candidate_count, d))
    scores = _acquisition(model, beta, candidates)
    best_idx = int(np.argmax(scores))
    best = candidates[best_idx].copy()
    best_score = float(scores[best_idx])

    for j in range(d):
        lo, hi = 0.0, 1.0
        for _ in range(TERNARY_STEPS):
            m1 = lo + (hi - lo) / 3.0
            m2 = hi - (hi - lo) / 3.0
            pair = np.repeat(best[None, :], 2, axis=0)
            pair[0, j], pair[1, j] = m1, m2
            f1, f2 = _acquisition(model, beta, pair)
            if f1 < f2:
                lo = m1
            else:
                hi = m2
        trial = best.copy()
        trial[j] = 0.5 * (lo + hi)
        trial_score = float(_acquisition(model, beta, trial[None, :])[0])
        if trial_score > best_score:
            best, best_score = trial, trial_score

    return best


def optimize(objective: Objective, space: SearchSpace, config: TuneConfig) -> TuneRun:
    """
    GP-UCB: random starts, then fit / propose / evaluate for n_iterations.

    The last ``config.exploit_iterations`` proposals use beta = 0, i.e. they
    maximise the posterior mean. A proposal that decodes to an already
    evaluated point is re-proposed once from a fresh candidate draw; a
    second duplicate is evaluated as is.
    """
    rng = np.random.default_rng(config.seed)
    recorder = _Recorder(objective, space)
    model_seconds = 0.0
    exploit_from = config.n_iterations - config.exploit_iterations

    for _ in range(config.n_random_starts):
        recorder.evaluate(rng.random(space.size))

    for iteration in range(config.n_iterations):
        beta = 0.0 if iteration >= exploit_from else config.beta
        tick = time.perf_counter()
        model = _fit_history(recorder.history, space, config)
        unit = propose_next(model, space, beta, rng, config.candidate_count)
        if recorder.seen(decode(space, unit)):
            logger.debug("iteration %d: duplicate proposal, resampling", iteration)
            unit = propose_next(model, space, beta, rng, config.candidate_count)
        model_seconds += time.perf_counter() - tick
        recorder.evaluate(unit)

    return recorder.finish("gp-ucb", model_seconds=model_seconds, seed=config.seed)


def _fit_history(history: Sequence[Observation], space: SearchSpace, config: TuneConfig) -> GpModel:
    X = np.array([obs.unit for obs in history], dtype=float).reshape(-1, space.size)
    y = np.array([obs.value for obs in history], dtype=float)
    kernel = default_kernel_config(space.size, y, lengthscale=config.lengthscale, nu=config.nu)
    return fit(kernel, X, y)


def grid_search(
    objective: Objective,
    space: SearchSpace,
    steps: Union[int, Sequence[int]],
) -> TuneRun:
    """Evaluate the full Cartesian grid in row-major order; first-found wins ties."""
    if isinstance(steps, int):
        steps = [steps] * space.size
    if len(steps) != space.size:
        raise SearchSpaceError(f"need {space.size} step counts, got {len(steps)}")

    axes = [d.grid(n) for d, n in zip(space.dims, steps)]
    recorder = _Recorder(objective, space)
    for point in itertools.product(*axes):
        recorder.evaluate(encode(space, point), point=tuple(point))
    return recorder.finish("grid", steps=list(steps))


def epsilon_greedy(
    objective: Objective,
    space: SearchSpace,
    epsilon: float,
    n_evaluations: int,
    neighborhood_radius: float,
    rng: np.random.Generator,
) -> TuneRun:
    """
    Local search around the incumbent with random restarts.

    Each step jumps to a uniform point with probability epsilon, otherwise
    samples uniformly from the box of half-width ``neighborhood_radius``
    (unit-cube units, clipped) around the incumbent.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must be in [0, 1]")
    if n_evaluations < 1:
        raise ValueError("n_evaluations must be >= 1")
    if neighborhood_radius <= 0:
        raise ValueError("neighborhood_radius must be positive")

    recorder = _Recorder(objective, space)
    first = rng.random(space.size)
    recorder.evaluate(first)
    incumbent_unit, incumbent_value = first, recorder.history[-1].value

    for _ in range(n_evaluations - 1):
        if rng.random() < epsilon:
            unit = rng.random(space.size)
        else:
            low = np.clip(incumbent_unit - neighborhood_radius, 0.0, 1.0)
            high = np.clip(incumbent_unit + neighborhood_radius, 0.0, 1.0)
            unit = rng.uniform(low, high)
        obs = recorder.evaluate(unit)
        if obs.value > incumbent_value:
            incumbent_unit, incumbent_value = unit, obs.value

    return recorder.finish(
        "epsilon-greedy", epsilon=epsilon, radius=neighborhood_radius
    )


def grid_bayes_search(
    objective: Objective,
    space: SearchSpace,
    grid_steps: Union[int, Sequence[int]],
    config: TuneConfig,
) -> TuneRun:
    """
    Exhaustive grid over the integer dims, GP-UCB over the continuous ones.

    Each grid cell runs its own optimisation with a seed spawned from
    ``config.seed``; the merged history is in cell order.
    """
    integer_dims = space.integer_dims()
    continuous_dims = space.continuous_dims()
    if not continuous_dims:
        raise SearchSpaceError("grid-mixed search needs at least one continuous dimension")

    if isinstance(grid_steps, int):
        grid_steps = [grid_steps] * len(integer_dims)
    if len(grid_steps) != len(integer_dims):
        raise SearchSpaceError(
            f"need {len(integer_dims)} grid step counts, got {len(grid_steps)}"
        )

    inner_space = SearchSpace(dims=continuous_dims)
    cells = list(itertools.product(*(d.grid(n) for d, n in zip(integer_dims, grid_steps))))
    seeds = np.random.SeedSequence(config.seed).spawn(len(cells))

    recorder = _Recorder(objective, space)
    model_seconds = 0.0
    cell_runs: List[Tuple[Dict[str, Value], TuneRun]] = []
    for cell, seed_seq in zip(cells, seeds):
        fixed = dict(zip((d.name for d in integer_dims), cell))

        def inner(point: Point, fixed: Dict[str, Value] = fixed) -> float:
            values = dict(zip(inner_space.names, point))
            values.update(fixed)
            return objective(tuple(values[name] for name in space.names))

        cell_config = config.model_copy(
            update={"seed": int(seed_seq.generate_state(1)[0])}
        )
        run = optimize(inner, inner_space, cell_config)
        cell_runs.append((fixed, run))
        model_seconds += run.model_seconds
        for obs in run.history:
            values = dict(zip(inner_space.names, obs.point))
            values.update(fixed)
            full_point = tuple(values[name] for name in space.names)
            recorder.record(
                full_point,
                obs.value,
                encode(space, full_point),
                run.objective_seconds / max(run.evaluations, 1),
            )

    return recorder.finish(
        "grid-mixed",
        model_seconds=model_seconds,
        grid_steps=list(grid_steps),
        cell_runs=cell_runs,
    )


@dataclass(frozen=True)
class PosteriorPoint:
    value: float
    mean: float
    sd: float
    ucb: float


def posterior_curve(run: TuneRun, config: TuneConfig, points: int = 200) -> List[PosteriorPoint]:
    """
    Posterior mean, sd and UCB along a one-dimensional continuous space,
    fitted on the whole run history.
    """
    space = run.space
    if space.size != 1 or space.dims[0].kind != "continuous":
        raise SearchSpaceError("posterior curve needs exactly one continuous dimension")
    if points < 2:
        raise ValueError("points must be >= 2")

    dim = space.dims[0]
    model = _fit_history(run.history, space, config)
    grid = np.linspace(0.0, 1.0, points)
    means, variances = predict_many(model, grid[:, None])
    sds = np.sqrt(variances)
    return [
        PosteriorPoint(
            value=float(dim.decode(u)),
            mean=float(m),
            sd=float(s),
            ucb=ucb(float(m), float(s), config.beta),
        )
        for u, m, s in zip(grid, means, sds)
    ]
