"""Sobol' indices read off PCE coefficients.

With an orthonormal basis the partial variance of a dimension subset u is the
sum of a_alpha^2 over the multi-indices that are non-zero exactly on u.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from typing import Iterable, Sequence

import numpy as np

from core.exceptions import DomainError, ZeroVariance
from models import SobolSpectrum
from tools.pce.model import PceModel
from tools.polynomials.multi_index import MultiIndexSet

from .types import SobolOrder

logger = logging.getLogger(__name__)


def _check_subset(subset: Iterable[int], dim: int) -> tuple[int, ...]:
    subset = tuple(sorted(int(i) for i in subset))
    if not subset:
        raise DomainError("dimension subset must not be empty", module="sobol")
    if len(set(subset)) != len(subset) or subset[0] < 0 or subset[-1] >= dim:
        raise DomainError(f"invalid dimension subset {subset} for dimension {dim}", module="sobol")
    return subset


def contribution_mask(
    index_array: np.ndarray, subset: Iterable[int], order: SobolOrder = SobolOrder.FIRST
) -> np.ndarray:
    """Rows of ``index_array`` whose squared coefficient enters the ``order`` index of ``subset``."""
    index_array = np.atleast_2d(np.asarray(index_array, dtype=int))
    subset = _check_subset(subset, index_array.shape[1])
    inside = np.zeros(index_array.shape[1], dtype=bool)
    inside[list(subset)] = True
    support = index_array > 0
    if order == SobolOrder.TOTAL:
        return support[:, inside].any(axis=1)
    outside_free = ~support[:, ~inside].any(axis=1)
    if order == SobolOrder.GROUP:
        return support[:, inside].all(axis=1) & outside_free
    return support.any(axis=1) & outside_free


def index_class(index_set: MultiIndexSet, subset: Iterable[int]) -> MultiIndexSet:
    """Multi-indices that are non-zero on every dimension of ``subset`` and zero elsewhere."""
    return index_set.select(np.flatnonzero(contribution_mask(index_set.array, subset, SobolOrder.GROUP)))


def sobol_ratio(
    index_array: np.ndarray,
    coefficients: np.ndarray,
    subset: Iterable[int],
    order: SobolOrder = SobolOrder.FIRST,
) -> np.ndarray:
    """Index of ``subset`` for one coefficient vector or a batch of them.

    ``coefficients`` has the terms on its last axis; leading axes are kept.
    Entries whose variance vanishes are NaN.
    """
    index_array = np.atleast_2d(np.asarray(index_array, dtype=int))
    squared = np.asarray(coefficients, dtype=float) ** 2
    variance = squared[..., index_array.sum(axis=1) > 0].sum(axis=-1)
    partial = squared[..., contribution_mask(index_array, subset, order)].sum(axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(variance > 0.0, partial / variance, np.nan)


def sobol_index(model: PceModel, subset: Iterable[int], order: SobolOrder = SobolOrder.FIRST) -> float:
    """Closed, class or total index of ``subset`` for ``model``.

    Raises:
        ZeroVariance: If the model variance is zero.
    """
    value = float(sobol_ratio(model.index_set.array, model.coefficients, subset, order))
    if np.isnan(value):
        raise ZeroVariance("all non-constant coefficients vanish")
    return value


def spectrum_from_coefficients(
    index_array: np.ndarray,
    coefficients: np.ndarray,
    active_dims: Sequence[int] | None = None,
) -> SobolSpectrum:
    """Partial variances of a coefficient table restricted to ``active_dims``.

    Multi-indices with support outside ``active_dims`` are ignored.

    Raises:
        ZeroVariance: If no non-constant coefficient on ``active_dims`` is non-zero.
    """
    index_array = np.atleast_2d(np.asarray(index_array, dtype=int))
    coefficients = np.asarray(coefficients, dtype=float)
    dim = index_array.shape[1]
    active = np.zeros(dim, dtype=bool)
    active[list(range(dim) if active_dims is None else active_dims)] = True

    partial: dict[tuple[int, ...], float] = defaultdict(float)
    for alpha, coefficient in zip(index_array, coefficients):
        support = alpha > 0
        if not support.any() or np.any(support & ~active):
            continue
        partial[tuple(int(i) for i in np.flatnonzero(support))] += float(coefficient) ** 2

    total = float(sum(partial.values()))
    if total <= 0.0:
        raise ZeroVariance("all non-constant coefficients on the active dimensions vanish")
    return SobolSpectrum(total_variance=total, partial=dict(sorted(partial.items())))


def sobol_indices(model: PceModel, active_dims: Sequence[int] | None = None) -> SobolSpectrum:
    """Sobol' decomposition of ``model`` over ``active_dims`` (all dimensions by default)."""
    return spectrum_from_coefficients(model.index_set.array, model.coefficients, active_dims)


def sobol_total(model: PceModel, i: int, active_dims: Sequence[int] | None = None) -> float:
    """Total Sobol' index of dimension ``i``."""
    _check_subset([i], model.dim)
    return sobol_indices(model, active_dims).total(i)
