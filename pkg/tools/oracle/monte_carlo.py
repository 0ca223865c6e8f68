"""Brute-force Monte Carlo Sobol' estimates used to validate the surrogate pipeline.

Sample matrices: A and B are independent n x M samples of the inputs; AB_i
is A with column i taken from B. y_B and y_AB_i share only x_i (first-order,
Janon form); y_A and y_AB_i differ only in x_i (total, Jansen form). One call
costs n (M + 2) model evaluations.
"""

from __future__ import annotations

import itertools
import logging
from typing import Callable, Sequence

import numpy as np

from core.config import settings
from core.exceptions import DomainError
from models import DoubleLoopBounds, McEstimate
from tools.distributions.pbox import ParametricPBox

logger = logging.getLogger(__name__)

Model = Callable[[np.ndarray], np.ndarray]

MIN_SAMPLES = 1000
MIN_GRID_POINTS = 3


def _janon_first(y_b: np.ndarray, y_ab: np.ndarray) -> McEstimate:
    n = len(y_b)
    u = y_b * y_ab
    half = 0.5 * (y_b + y_ab)
    w = 0.5 * (y_b**2 + y_ab**2)
    m_u, m_h, m_w = u.mean(), half.mean(), w.mean()
    numerator, denominator = m_u - m_h**2, m_w - m_h**2
    if denominator <= 0.0:
        return McEstimate(value=0.0, std_error=0.0, n=n)
    gradient = np.array(
        [1.0 / denominator, 2.0 * m_h * (numerator - denominator) / denominator**2, -numerator / denominator**2]
    )
    covariance = np.cov(np.vstack([u, half, w]))
    std_error = float(np.sqrt(max(gradient @ covariance @ gradient, 0.0) / n))
    return McEstimate(value=float(numerator / denominator), std_error=std_error, n=n)


def _jansen_total(y_a: np.ndarray, y_ab: np.ndarray) -> McEstimate:
    n = len(y_a)
    z = 0.5 * (y_a - y_ab) ** 2
    m_z, m_y, m_q = z.mean(), y_a.mean(), (y_a**2).mean()
    variance = m_q - m_y**2
    if variance <= 0.0:
        return McEstimate(value=0.0, std_error=0.0, n=n)
    gradient = np.array([1.0 / variance, 2.0 * m_z * m_y / variance**2, -m_z / variance**2])
    covariance = np.cov(np.vstack([z, y_a, y_a**2]))
    std_error = float(np.sqrt(max(gradient @ covariance @ gradient, 0.0) / n))
    return McEstimate(value=float(m_z / variance), std_error=std_error, n=n)


def sobol_mc_all(
    model: Model, marginals: Sequence, n: int, seed: int = 0
) -> list[tuple[McEstimate, McEstimate]]:
    """First-order and total estimates of every input.

    Args:
        model: Vectorized model taking an (n x M) array.
        marginals: One frozen distribution (with ``ppf``) per input.
        n: Rows of each sample matrix.
        seed: Seed of the sample matrices.
    """
    if n < MIN_SAMPLES:
        raise DomainError(f"Monte Carlo estimates need n >= {MIN_SAMPLES}, got {n}", module="oracle")
    dim = len(marginals)
    unit = np.clip(np.random.default_rng(seed).random((n, 2 * dim)), 1e-16, 1.0 - 1e-16)
    A, B = np.empty((n, dim)), np.empty((n, dim))
    for k, marginal in enumerate(marginals):
        A[:, k] = marginal.ppf(unit[:, k])
        B[:, k] = marginal.ppf(unit[:, dim + k])
    y_a = np.asarray(model(A), dtype=float)
    y_b = np.asarray(model(B), dtype=float)

    estimates = []
    for i in range(dim):
        AB = A.copy()
        AB[:, i] = B[:, i]
        y_ab = np.asarray(model(AB), dtype=float)
        estimates.append((_janon_first(y_b, y_ab), _jansen_total(y_a, y_ab)))
    return estimates


def sobol_mc(
    model: Model, marginals: Sequence, i: int, n: int, seed: int = 0
) -> tuple[McEstimate, McEstimate]:
    """First-order and total Monte Carlo estimates for input ``i``."""
    if not 0 <= i < len(marginals):
        raise DomainError(f"input {i} out of range", module="oracle")
    return sobol_mc_all(model, marginals, n, seed)[i]


def hyperparameter_grid(pboxes: Sequence[ParametricPBox], points: int) -> list[list[np.ndarray]]:
    """Full factorial grid of hyper-parameter vectors, one list entry per cell."""
    if points < MIN_GRID_POINTS:
        raise DomainError(f"grid needs >= {MIN_GRID_POINTS} points per parameter", module="oracle")
    per_input = [pbox.box.grid(points) for pbox in pboxes]
    return [list(cell) for cell in itertools.product(*per_input)]


def imprecise_sobol_doubleloop(
    model: Model,
    pboxes: Sequence[ParametricPBox],
    theta_grid: int,
    n_inner: int,
    seed: int = 0,
) -> DoubleLoopBounds:
    """Min and max of Monte Carlo Sobol' estimates over a hyper-parameter grid.

    Every cell reuses the same inner sample (common random numbers), so
    refining a grid that contains the coarser one only widens the intervals.
    """
    cells = hyperparameter_grid(pboxes, theta_grid)
    dim = len(pboxes)
    calls = len(cells) * n_inner * (dim + 2)
    if calls > settings.ORACLE_CALL_WARNING:
        logger.warning("Double loop projects %.3g model calls (%d grid cells)", calls, len(cells))
    logger.info("Double loop over %d cells with %d inner samples", len(cells), n_inner)

    first = np.empty((len(cells), dim))
    total = np.empty((len(cells), dim))
    worst = 0.0
    for c, cell in enumerate(cells):
        marginals = [pbox.family.frozen(theta) for pbox, theta in zip(pboxes, cell)]
        for i, (s_first, s_total) in enumerate(sobol_mc_all(model, marginals, n_inner, seed)):
            first[c, i], total[c, i] = s_first.value, s_total.value
            worst = max(worst, s_first.std_error, s_total.std_error)

    return DoubleLoopBounds(
        first_lower=first.min(axis=0),
        first_upper=first.max(axis=0),
        total_lower=total.min(axis=0),
        total_upper=total.max(axis=0),
        worst_std_error=worst,
        n_cells=len(cells),
        model_calls=calls,
    )
