"""
Gaussian-process regression with a Matérn kernel.

Inputs live in the unit cube. Observations are centred by their mean and
the residuals get a zero-mean prior; the posterior is held as a Cholesky
factor of K + (noise + jitter) I.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy.linalg import LinAlgError, cho_solve, cholesky, solve_triangular
from scipy.spatial.distance import cdist

from app.core.errors import FactorizationError

logger = logging.getLogger(__name__)

SUPPORTED_NU = (0.5, 1.5, 2.5)
MAX_JITTER = 1e-2
SQRT3 = np.sqrt(3.0)
SQRT5 = np.sqrt(5.0)


class KernelConfig(BaseModel):
    """Matérn kernel hyperparameters."""

    model_config = ConfigDict(frozen=True)

    nu: float = 2.5
    lengthscales: Tuple[float, ...]
    signal_variance: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    noise_variance: float = Field(default=0.0, ge=0, allow_inf_nan=False)
    jitter: float = Field(default=1e-8, gt=0, allow_inf_nan=False)

    @field_validator("nu")
    @classmethod
    def _check_nu(cls, value: float) -> float:
        if value not in SUPPORTED_NU:
            raise ValueError(f"nu must be one of {SUPPORTED_NU}, got {value}")
        return value

    @field_validator("lengthscales")
    @classmethod
    def _check_lengthscales(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if not value:
            raise ValueError("at least one lengthscale is required")
        if any(not np.isfinite(v) or v <= 0 for v in value):
            raise ValueError("lengthscales must be finite and positive")
        return value

    @property
    def dim(self) -> int:
        return len(self.lengthscales)


def _matern(config: KernelConfig, r: np.ndarray) -> np.ndarray:
    if config.nu == 2.5:
        values = (1.0 + SQRT5 * r + 5.0 * r**2 / 3.0) * np.exp(-SQRT5 * r)
    elif config.nu == 1.5:
        values = (1.0 + SQRT3 * r) * np.exp(-SQRT3 * r)
    else:
        values = np.exp(-r)
    return config.signal_variance * values


def _as_points(config: KernelConfig, points: np.ndarray) -> np.ndarray:
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[1] != config.dim:
        raise ValueError(
            f"points have dimension {points.shape[1]}, kernel expects {config.dim}"
        )
    return points


def kernel_matrix(config: KernelConfig, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Covariance between every row of A and every row of B."""
    scale = np.asarray(config.lengthscales, dtype=float)
    A = _as_points(config, A) / scale
    B = _as_points(config, B) / scale
    return _matern(config, cdist(A, B, metric="euclidean"))


def kernel_eval(config: KernelConfig, x: Sequence[float], x_prime: Sequence[float]) -> float:
    """Covariance between two points."""
    x = np.asarray(x, dtype=float).ravel()
    x_prime = np.asarray(x_prime, dtype=float).ravel()
    if x.shape != x_prime.shape or x.size != config.dim:
        raise ValueError(
            f"dimension mismatch: {x.size} vs {x_prime.size}, kernel expects {config.dim}"
        )
    diff = (x - x_prime) / np.asarray(config.lengthscales, dtype=float)
    r = np.sqrt(np.sum(diff * diff))
    return float(_matern(config, np.asarray(r)))


@dataclass(frozen=True)
class GpModel:
    """Fitted posterior state; immutable, safe to share between threads."""

    config: KernelConfig
    X: np.ndarray
    y: np.ndarray
    mean_offset: float
    chol: Optional[np.ndarray]
    alpha: Optional[np.ndarray]
    jitter: float

    @classmethod
    def prior(cls, config: KernelConfig) -> "GpModel":
        """A model with no observations: zero mean, prior variance."""
        return cls(
            config=config,
            X=np.empty((0, config.dim)),
            y=np.empty(0),
            mean_offset=0.0,
            chol=None,
            alpha=None,
            jitter=config.jitter,
        )

    @property
    def n_points(self) -> int:
        return int(self.X.shape[0])


def fit(config: KernelConfig, X: np.ndarray, y: Sequence[float]) -> GpModel:
    """
    Condition the GP on observations.

    Rows are put in lexicographic order first, so the posterior does not
    depend on the order observations arrive in. Jitter is doubled on each
    failed factorisation until it would exceed 1e-2, at which point
    FactorizationError is raised.
    """
    X = _as_points(config, X)
    y = np.asarray(y, dtype=float).ravel()
    if X.shape[0] != y.size:
        raise ValueError(f"got {X.shape[0]} points but {y.size} values")
    if y.size == 0:
        return GpModel.prior(config)

    order = np.lexsort((y, *X.T[::-1]))
    X, y = X[order], y[order]

    mean_offset = float(np.mean(y))
    residuals = y - mean_offset
    gram = kernel_matrix(config, X, X)
    eye = np.eye(y.size)

    jitter = config.jitter
    while True:
        try:
            chol = cholesky(gram + (config.noise_variance + jitter) * eye, lower=True)
            break
        except LinAlgError as e:
            jitter *= 2.0
            if jitter > MAX_JITTER:
                raise FactorizationError(
                    f"Gram matrix of {y.size} points is not positive definite "
                    f"even with jitter {MAX_JITTER}"
                ) from e
            logger.debug("Cholesky failed, raising jitter to %.3g", jitter)

    alpha = cho_solve((chol, True), residuals)
    return GpModel(
        config=config,
        X=X,
        y=residuals,
        mean_offset=mean_offset,
        chol=chol,
        alpha=alpha,
        jitter=jitter,
    )


def predict_many(model: GpModel, X_star: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Posterior means and variances at every row of X_star."""
    X_star = _as_points(model.config, X_star)
    prior_variance = np.full(X_star.shape[0], model.config.signal_variance)

    if model.n_points == 0:
        return np.full(X_star.shape[0], model.mean_offset), prior_variance

    k_star = kernel_matrix(model.config, X_star, model.X)
    mean = model.mean_offset + k_star @ model.alpha
    v = solve_triangular(model.chol, k_star.T, lower=True)
    variance = prior_variance - np.sum(v * v, axis=0)
    return mean, np.maximum(variance, 0.0)


def predict(model: GpModel, x_star: Sequence[float]) -> Tuple[float, float]:
    """Posterior mean and variance at one point."""
    mean, variance = predict_many(model, np.asarray(x_star, dtype=float).reshape(1, -1))
    return float(mean[0]), float(variance[0])


def default_kernel_config(
    dim: int,
    y: Sequence[float],
    lengthscale: float = 0.2,
    nu: float = 2.5,
) -> KernelConfig:
    """
    Fixed hyperparameters for unit-cube inputs.

    Signal variance is the sample variance of y, or 1.0 when there is at most
    one observation or y is constant; noise is 1e-6 of the signal variance.
    """
    y = np.asarray(y, dtype=float)
    signal_variance = float(np.var(y)) if y.size > 1 else 0.0
    if not np.isfinite(signal_variance) or signal_variance <= 0.0:
        signal_variance = 1.0
    return KernelConfig(
        nu=nu,
        lengthscales=(lengthscale,) * dim,
        signal_variance=signal_variance,
        noise_variance=1e-6 * signal_variance,
    )
