"""Conditional Sobol' indices and their bounds over the hyper-parameter box."""

from __future__ import annotations

import logging
from typing import Callable, Iterable

import numpy as np

from core.exceptions import OptimizationFailed, ZeroVariance
from models import SobolInterval, SobolSample
from tools.optimization.optimizer import OptimizerConfig, maximize, minimize
from tools.sobol.indices import sobol_ratio
from tools.sobol.types import SobolOrder

from .reordering import SplitIndexSet, conditional_coefficient_matrix

logger = logging.getLogger(__name__)

ThetaSampler = Callable[[np.random.Generator, int], np.ndarray]


def conditional_sobol_batch(
    split: SplitIndexSet,
    coefficients: np.ndarray,
    subset: Iterable[int],
    thetas: np.ndarray,
    order: SobolOrder = SobolOrder.FIRST,
) -> np.ndarray:
    """Conditional indices for a batch of standardized thetas; NaN where the variance vanishes."""
    a_theta = conditional_coefficient_matrix(split, coefficients, thetas)
    return sobol_ratio(split.unique_aleatory.array, a_theta, subset, order)


def conditional_sobol(
    split: SplitIndexSet,
    coefficients: np.ndarray,
    subset: Iterable[int],
    theta: np.ndarray,
    order: SobolOrder = SobolOrder.FIRST,
) -> float:
    """Sobol' index of the conditional expansion at standardized ``theta``.

    Raises:
        ZeroVariance: If the conditional variance is zero at ``theta``.
    """
    value = float(conditional_sobol_batch(split, coefficients, subset, theta, order)[0])
    if np.isnan(value):
        raise ZeroVariance("conditional variance vanishes at the given hyper-parameters", module="imprecise")
    return value


def pinched_sobol(
    split: SplitIndexSet,
    coefficients: np.ndarray,
    subset: Iterable[int],
    order: SobolOrder = SobolOrder.FIRST,
) -> float:
    """Index with every hyper-parameter pinched to its interval midpoint."""
    return conditional_sobol(split, coefficients, subset, np.zeros((1, split.n_theta)), order)


def sobol_bounds(
    split: SplitIndexSet,
    coefficients: np.ndarray,
    subset: Iterable[int],
    order: SobolOrder = SobolOrder.FIRST,
    optimizer_cfg: OptimizerConfig = OptimizerConfig(),
    name: str = "",
) -> SobolInterval:
    """Minimum and maximum of the conditional index over the standardized box.

    Raises:
        OptimizationFailed: If the conditional variance vanishes at every evaluated point.
    """
    subset = tuple(sorted(set(int(i) for i in subset)))
    if split.n_theta == 0:
        value = conditional_sobol(split, coefficients, subset, np.zeros((1, 0)), order)
        empty = np.zeros(0)
        return SobolInterval(subset, str(order), value, value, empty, empty, name)

    def objective(thetas: np.ndarray) -> np.ndarray:
        return conditional_sobol_batch(split, coefficients, subset, thetas, order)

    box = [(-1.0, 1.0)] * split.n_theta
    try:
        low = minimize(objective, box, optimizer_cfg, vectorized=True)
        high = maximize(objective, box, optimizer_cfg, vectorized=True)
    except OptimizationFailed:
        logger.error("Conditional variance of %s vanished everywhere", name or subset)
        raise

    # Both searches evaluate the same function; keep the pair ordered.
    candidates = sorted([(low.value, low.theta), (high.value, high.theta)], key=lambda pair: pair[0])
    (lower, argmin), (upper, argmax) = candidates[0], candidates[-1]
    logger.debug("%s %s index in [%.6f, %.6f]", name or subset, order, lower, upper)
    return SobolInterval(subset, str(order), float(lower), float(upper), argmin, argmax, name)


def uniform_theta_sampler(n_theta: int) -> ThetaSampler:
    """Independent uniform draws over the standardized box."""

    def sample(rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(-1.0, 1.0, size=(n, n_theta))

    return sample


def point_mass_sampler(theta: np.ndarray) -> ThetaSampler:
    theta = np.asarray(theta, dtype=float)

    def sample(rng: np.random.Generator, n: int) -> np.ndarray:
        return np.tile(theta, (n, 1))

    return sample


def sobol_distribution(
    split: SplitIndexSet,
    coefficients: np.ndarray,
    subset: Iterable[int],
    order: SobolOrder,
    theta_sampler: ThetaSampler,
    n: int,
    seed: int = 0,
) -> SobolSample:
    """Conditional indices at ``n`` sampled hyper-parameters.

    Draws with zero conditional variance are excluded and counted.
    """
    rng = np.random.default_rng(seed)
    thetas = theta_sampler(rng, n).reshape(n, split.n_theta)
    values = conditional_sobol_batch(split, coefficients, subset, thetas, order)
    excluded = np.isnan(values)
    if excluded.any():
        logger.warning("%d of %d sampled hyper-parameters had zero conditional variance", excluded.sum(), n)
    return SobolSample(values=values[~excluded], n_excluded=int(excluded.sum()))
