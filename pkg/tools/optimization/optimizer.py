"""Seedable box-constrained global optimization.

Differential evolution (rand/1/bin, F=0.7, CR=0.9) from a Latin hypercube
start population, restarted with pre-split seed streams and followed by a
coordinate-wise bounded line-search polish. Objectives may return NaN or inf
for excluded points; those rank below every finite value.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize
from scipy.stats import qmc

from core.exceptions import DomainError, OptimizationFailed
from models import OptimizationResult

logger = logging.getLogger(__name__)

Objective = Callable[[np.ndarray], np.ndarray | float]

EXCLUDED_PENALTY = 1e30
MINIMIZE_STREAM = 0
MAXIMIZE_STREAM = 1

_MUTATION = 0.7
_RECOMBINATION = 0.9
_POLISH_SWEEPS = 3


@dataclass(frozen=True)
class OptimizerConfig:
    """Optimizer budget.

    Attributes:
        population: Individuals per generation (at least 5 are used).
        generations: Generation cap per restart.
        restarts: Independent restarts.
        seed: Master seed.
        tol: Improvement below which a generation counts as stagnant.
        stagnation: Stagnant generations after which a restart stops.
        polish: Refine the best point coordinate by coordinate.
    """

    population: int = 40
    generations: int = 200
    restarts: int = 4
    seed: int = 0
    tol: float = 1e-9
    stagnation: int = 30
    polish: bool = True

    def __post_init__(self):
        if self.population < 4:
            raise DomainError("population must be >= 4", module="optimizer")
        if min(self.generations, self.restarts, self.stagnation) < 1 or self.tol <= 0 or self.seed < 0:
            raise DomainError("optimizer settings must be positive", module="optimizer")


class _CountingObjective:
    """Batch evaluation with excluded points mapped to a penalty."""

    def __init__(self, objective: Objective, vectorized: bool):
        self.objective = objective
        self.vectorized = vectorized
        self.calls = 0
        self.excluded = 0

    def __call__(self, thetas: np.ndarray) -> np.ndarray:
        thetas = np.atleast_2d(thetas)
        if self.vectorized:
            values = np.asarray(self.objective(thetas), dtype=float).reshape(len(thetas))
        else:
            values = np.array([float(self.objective(theta)) for theta in thetas])
        bad = ~np.isfinite(values)
        self.calls += len(values)
        self.excluded += int(bad.sum())
        values[bad] = EXCLUDED_PENALTY
        return values


def _polish(
    evaluate: _CountingObjective,
    theta: np.ndarray,
    value: float,
    lower: np.ndarray,
    upper: np.ndarray,
    free: np.ndarray,
) -> tuple[np.ndarray, float]:
    theta = theta.copy()
    for _ in range(_POLISH_SWEEPS):
        start = value
        for d in np.flatnonzero(free):

            def along(t: float, d: int = d) -> float:
                trial = theta.copy()
                trial[d] = t
                return float(evaluate(trial)[0])

            result = optimize.minimize_scalar(
                along, bounds=(lower[d], upper[d]), method="bounded", options={"xatol": 1e-10}
            )
            for candidate in (result.x, lower[d], upper[d]):
                trial_value = along(candidate)
                if trial_value < value:
                    theta[d], value = candidate, trial_value
        if start - value <= 1e-15 * max(1.0, abs(start)):
            break
    return theta, value


def _restart(
    evaluate: _CountingObjective,
    lower: np.ndarray,
    upper: np.ndarray,
    free: np.ndarray,
    cfg: OptimizerConfig,
    rng: np.random.Generator,
) -> tuple[np.ndarray, float]:
    lo, hi = lower[free], upper[free]
    n_free = int(free.sum())
    size = max(cfg.population, 5)
    init = lo + (hi - lo) * qmc.LatinHypercube(d=n_free, seed=rng).random(size)

    def full(x_free: np.ndarray) -> np.ndarray:
        x_free = np.atleast_2d(x_free)
        thetas = np.broadcast_to(lower, (len(x_free), len(lower))).copy()
        thetas[:, free] = x_free
        return thetas

    history = {"best": np.inf, "stale": 0}

    def stop_on_stagnation(intermediate_result) -> bool:
        if history["best"] - intermediate_result.fun > cfg.tol:
            history["best"], history["stale"] = intermediate_result.fun, 0
        else:
            history["stale"] += 1
        return history["stale"] >= cfg.stagnation

    result = optimize.differential_evolution(
        lambda x: evaluate(full(x.T)),
        bounds=list(zip(lo, hi)),
        strategy="rand1bin",
        maxiter=cfg.generations,
        tol=0.0,
        atol=0.0,
        mutation=_MUTATION,
        recombination=_RECOMBINATION,
        seed=rng,
        callback=stop_on_stagnation,
        polish=False,
        init=init,
        updating="deferred",
        vectorized=True,
    )
    theta = full(result.x)[0]
    value = float(evaluate(theta)[0])
    if cfg.polish and value < EXCLUDED_PENALTY:
        theta, value = _polish(evaluate, theta, value, lower, upper, free)
    return theta, value


def minimize(
    objective: Objective,
    bounds: Sequence[tuple[float, float]],
    cfg: OptimizerConfig = OptimizerConfig(),
    vectorized: bool = False,
    stream: int = MINIMIZE_STREAM,
) -> OptimizationResult:
    """Global minimum of ``objective`` over the box ``bounds``.

    Args:
        objective: f(theta), or f(thetas) -> values for a batch when ``vectorized``.
            NaN/inf marks an excluded point.
        bounds: (lower, upper) per coordinate; equal bounds fix a coordinate.
        cfg: Optimizer budget and master seed.
        vectorized: Whether ``objective`` accepts a (batch, dim) array.
        stream: Seed stream; restart r draws from (cfg.seed, stream, r).

    Raises:
        OptimizationFailed: If every evaluation was excluded.
    """
    lower = np.array([float(lo) for lo, _ in bounds])
    upper = np.array([float(hi) for _, hi in bounds])
    if np.any(lower > upper):
        raise DomainError("optimizer bounds have lower > upper", module="optimizer")
    free = upper > lower
    evaluate = _CountingObjective(objective, vectorized)

    if not free.any():
        theta, value = lower.copy(), float(evaluate(lower)[0])
        trace = [value]
    else:
        theta, value, trace = None, np.inf, []
        for r in range(cfg.restarts):
            rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, stream, r]))
            candidate, candidate_value = _restart(evaluate, lower, upper, free, cfg, rng)
            if theta is None or candidate_value < value:
                theta, value = candidate, candidate_value
            trace.append(value)
            logger.debug("Restart %d/%d: best %.12g", r + 1, cfg.restarts, value)

    if value >= EXCLUDED_PENALTY:
        raise OptimizationFailed(f"all {evaluate.calls} evaluations were excluded")
    theta = np.clip(theta, lower, upper)
    return OptimizationResult(
        theta=theta,
        value=value,
        n_evaluations=evaluate.calls,
        n_excluded=evaluate.excluded,
        trace=trace,
    )


def maximize(
    objective: Objective,
    bounds: Sequence[tuple[float, float]],
    cfg: OptimizerConfig = OptimizerConfig(),
    vectorized: bool = False,
    stream: int = MAXIMIZE_STREAM,
) -> OptimizationResult:
    """Global maximum, found by minimizing the negated objective on its own seed stream."""

    def negated(theta):
        return -np.asarray(objective(theta), dtype=float)

    result = minimize(negated, bounds, cfg, vectorized=vectorized, stream=stream)
    result.value = -result.value
    result.trace = [-value for value in result.trace]
    return result
