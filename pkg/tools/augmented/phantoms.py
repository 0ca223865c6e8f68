"""Phantom points: extra regression rows that reuse existing model runs.

For an evaluated physical point chi and any hyper-parameter replicate tau,
the auxiliary coordinate is chosen so that the transform maps (tau, aux)
back to chi. Every replicate shares the response of its base run, so a design
of n_ph x N rows costs exactly N model evaluations.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.stats import qmc

from core.exceptions import DimensionMismatch, DomainError, InfeasibleBase
from models import ExperimentalDesign

from .space import AugmentedSpace
from .types import PhantomMode

logger = logging.getLogger(__name__)

RETRY_CAP = 1000


def _replicate_thetas(
    space: AugmentedSpace, n_rep: int, rng: np.random.Generator, mode: PhantomMode
) -> np.ndarray:
    """Standardized hyper-parameter replicates, stratified by a Latin hypercube."""
    if n_rep <= 0 or space.n_theta == 0:
        return np.zeros((max(n_rep, 0), space.n_theta))
    if mode == PhantomMode.JOINT:
        unit = qmc.LatinHypercube(d=space.n_theta, seed=rng).random(n_rep)
    else:
        parts = []
        for block in space.blocks:
            if block.theta_dims:
                sample = qmc.LatinHypercube(d=len(block.theta_dims), seed=rng).random(n_rep)
                parts.append(sample[rng.permutation(n_rep)])
        unit = np.hstack(parts)
    return 2.0 * unit - 1.0


def _augmented_rows(space: AugmentedSpace, x_row: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    v = np.zeros((len(thetas), space.dim))
    v[:, list(space.epistemic_dims)] = thetas
    for i, (block, params) in enumerate(zip(space.blocks, space.block_parameters(v))):
        v[:, block.aux_dim] = block.to_aux(x_row[i], params)
    return v


def _feasible(space: AugmentedSpace, x_row: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    v = np.zeros((len(thetas), space.dim))
    v[:, list(space.epistemic_dims)] = thetas
    ok = np.ones(len(thetas), dtype=bool)
    for i, (block, params) in enumerate(zip(space.blocks, space.block_parameters(v))):
        if block.family.is_bounded:
            ok &= block.is_feasible(x_row[i], params)
    return ok


def _admits_feasible_theta(space: AugmentedSpace, x_row: np.ndarray) -> bool:
    """Necessary condition: x inside the union of conditional supports over the box."""
    for i, block in enumerate(space.blocks):
        if block.family.is_bounded:
            lower, upper = block.family.support(block.pbox.box.corners())
            if not np.min(lower) <= x_row[i] <= np.max(upper):
                return False
    return True


def _build_design(
    space: AugmentedSpace,
    base_points: np.ndarray,
    responses: np.ndarray,
    n_ph: int,
    seed: int,
    run_ids: np.ndarray | None,
    base_theta: np.ndarray | None,
    mode: PhantomMode,
    bounded: bool,
) -> ExperimentalDesign:
    x = np.atleast_2d(np.asarray(base_points, dtype=float))
    responses = np.asarray(responses, dtype=float).ravel()
    n_base = len(x)
    run_ids = np.arange(n_base) if run_ids is None else np.asarray(run_ids, dtype=int)
    if n_ph < 1:
        raise DomainError(f"n_ph must be >= 1, got {n_ph}", module="augmented")
    if x.shape[1] != space.n_inputs or not len(responses) == len(run_ids) == n_base:
        raise DimensionMismatch("base points, responses and run ids do not match the space", module="augmented")
    if base_theta is not None:
        base_theta = np.asarray(base_theta, dtype=float).reshape(n_base, space.n_theta)
    if space.n_theta == 0 and n_ph > 1:
        logger.warning("No epistemic dimensions: phantom replicates would coincide, using n_ph=1")
        n_ph = 1

    rows, counts = [], np.zeros(n_base, dtype=int)
    skipped = 0
    for j in range(n_base):
        rng = np.random.default_rng(np.random.SeedSequence([seed, j]))
        fixed = [] if base_theta is None else [base_theta[j]]
        drawn = _replicate_thetas(space, n_ph - len(fixed), rng, mode)
        thetas = np.vstack(fixed + [drawn]) if fixed else drawn

        if bounded:
            if not _admits_feasible_theta(space, x[j]):
                raise InfeasibleBase(f"base point {j} lies outside every conditional support of the box")
            kept = []
            for k, theta in enumerate(thetas):
                tries = 0
                while not _feasible(space, x[j], theta[None, :])[0] and tries < RETRY_CAP and k >= len(fixed):
                    theta = 2.0 * rng.random(space.n_theta) - 1.0
                    tries += 1
                if _feasible(space, x[j], theta[None, :])[0]:
                    kept.append(theta)
                else:
                    skipped += 1
            if not kept:
                raise InfeasibleBase(f"no feasible hyper-parameters found for base point {j}")
            thetas = np.vstack(kept)

        rows.append(_augmented_rows(space, x[j], thetas))
        counts[j] = len(thetas)

    points = np.vstack(rows)
    if skipped:
        logger.info("Skipped %d infeasible phantom replicates", skipped)
    logger.info("Phantom design: %d rows from %d model runs (n_ph=%d)", len(points), n_base, n_ph)
    return ExperimentalDesign(
        points=points,
        responses=np.repeat(responses, counts),
        run_ids=np.repeat(run_ids, counts),
        physical=np.repeat(x, counts, axis=0),
        replicates=counts,
    )


def generate_phantoms(
    space: AugmentedSpace,
    base_points: np.ndarray,
    responses: np.ndarray,
    n_ph: int,
    seed: int = 0,
    run_ids: np.ndarray | None = None,
    base_theta: np.ndarray | None = None,
    mode: PhantomMode = PhantomMode.JOINT,
) -> ExperimentalDesign:
    """Regression design of up to n_ph rows per evaluated base point.

    Args:
        space: Augmented space.
        base_points: Evaluated physical inputs (N x M).
        responses: Model response of each base point.
        n_ph: Rows per base point, the base point itself included.
        seed: Master seed; replicates of base point j use the stream (seed, j).
        run_ids: Evaluation id of each base point (defaults to 0..N-1).
        base_theta: Standardized hyper-parameters of the original augmented
            points; when given they form replicate 1 of every base point.
        mode: Joint or per-input hyper-parameter replicate draws.

    Spaces with a bounded-support input are delegated to
    ``generate_phantoms_bounded``.
    """
    return _build_design(
        space, base_points, responses, n_ph, seed, run_ids, base_theta, mode,
        bounded=space.has_bounded_support,
    )


def generate_phantoms_bounded(
    space: AugmentedSpace,
    base_points: np.ndarray,
    responses: np.ndarray,
    n_ph: int,
    seed: int = 0,
    run_ids: np.ndarray | None = None,
    base_theta: np.ndarray | None = None,
    mode: PhantomMode = PhantomMode.JOINT,
) -> ExperimentalDesign:
    """Phantom design that only keeps replicates whose support contains the base point.

    Infeasible replicates are redrawn uniformly over the box up to
    ``RETRY_CAP`` times and then skipped; ``replicates`` of the returned design
    holds the achieved count per base point.

    Raises:
        InfeasibleBase: If a base point lies outside every conditional support.
    """
    return _build_design(
        space, base_points, responses, n_ph, seed, run_ids, base_theta, mode, bounded=True
    )
