"""Reordering of an augmented PCE into a PCE of the aleatory variables.

Every basis polynomial factorizes as psi_alpha(v) = psi_alpha_C(c) psi_alpha_T(theta).
Grouping the terms by their aleatory part alpha_C gives, for fixed theta, the
conditional expansion sum_g a_g(theta) psi_g(c) with

    a_g(theta) = sum over alpha in group g of a_alpha psi_alpha_T(theta).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from core.exceptions import DomainError
from tools.pce.model import PceModel
from tools.polynomials.bases import UnivariateBasis
from tools.polynomials.multi_index import MultiIndexSet, tensor_basis_matrix

logger = logging.getLogger(__name__)

_BOX_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class SplitIndexSet:
    """Aleatory/epistemic split of a model's multi-indices.

    Attributes:
        aleatory_dims: Augmented dimensions of the aleatory variables.
        epistemic_dims: Augmented dimensions of the standardized hyper-parameters.
        alpha_c: Aleatory part of every multi-index (n_terms x n_aleatory).
        alpha_theta: Epistemic part of every multi-index (n_terms x n_theta).
        unique_aleatory: Distinct aleatory parts in graded-lex order.
        group_of: Position in ``unique_aleatory`` of every multi-index.
        aleatory_bases: Bases of the aleatory dimensions.
        theta_bases: Bases of the epistemic dimensions.
    """

    aleatory_dims: tuple[int, ...]
    epistemic_dims: tuple[int, ...]
    alpha_c: np.ndarray
    alpha_theta: np.ndarray
    unique_aleatory: MultiIndexSet
    group_of: np.ndarray
    aleatory_bases: tuple[UnivariateBasis, ...]
    theta_bases: tuple[UnivariateBasis, ...]

    @property
    def n_groups(self) -> int:
        return len(self.unique_aleatory)

    @property
    def n_theta(self) -> int:
        return len(self.epistemic_dims)

    @property
    def group_sizes(self) -> list[int]:
        return np.bincount(self.group_of, minlength=self.n_groups).tolist()

    def members(self, group: int) -> np.ndarray:
        return np.flatnonzero(self.group_of == group)

    def reconstruct(self, k: int) -> tuple[int, ...]:
        """Full multi-index of term ``k`` from its two parts."""
        alpha = np.zeros(len(self.aleatory_dims) + len(self.epistemic_dims), dtype=int)
        alpha[list(self.aleatory_dims)] = self.alpha_c[k]
        alpha[list(self.epistemic_dims)] = self.alpha_theta[k]
        return tuple(int(a) for a in alpha)


def split_indices(model: PceModel) -> SplitIndexSet:
    """Split every multi-index of ``model`` into its aleatory and epistemic parts."""
    aleatory = list(model.aleatory_dims)
    epistemic = list(model.epistemic_dims)
    array = model.index_set.array
    alpha_c = array[:, aleatory]
    alpha_theta = array[:, epistemic]
    unique = MultiIndexSet((tuple(row) for row in alpha_c), dim=len(aleatory))
    group_of = np.array([unique.index_of(tuple(row)) for row in alpha_c], dtype=int)
    logger.debug("Split %d terms into %d aleatory groups", len(array), len(unique))
    return SplitIndexSet(
        aleatory_dims=tuple(aleatory),
        epistemic_dims=tuple(epistemic),
        alpha_c=alpha_c,
        alpha_theta=alpha_theta,
        unique_aleatory=unique,
        group_of=group_of,
        aleatory_bases=tuple(model.bases[d] for d in aleatory),
        theta_bases=tuple(model.bases[d] for d in epistemic),
    )


def conditional_coefficient_matrix(
    split: SplitIndexSet, coefficients: np.ndarray, thetas: np.ndarray
) -> np.ndarray:
    """a_g(theta) for a batch of standardized hyper-parameters (batch x n_groups).

    Raises:
        DomainError: If any theta lies outside [-1, 1].
    """
    thetas = np.asarray(thetas, dtype=float)
    if split.n_theta:
        thetas = thetas.reshape(-1, split.n_theta)
    else:
        thetas = np.zeros((thetas.shape[0] if thetas.ndim == 2 else 1, 0))
    if np.any(np.abs(thetas) > 1.0 + _BOX_SLACK):
        raise DomainError("standardized hyper-parameters must lie in [-1, 1]", module="imprecise")
    coefficients = np.asarray(coefficients, dtype=float)
    if split.n_theta:
        max_degrees = split.alpha_theta.max(axis=0)
        psi = np.ones((len(thetas), len(coefficients)))
        for i, basis in enumerate(split.theta_bases):
            degrees = split.alpha_theta[:, i]
            if max_degrees[i] > 0:
                psi *= basis.evaluate_all(thetas[:, i], int(max_degrees[i]))[:, degrees]
    else:
        psi = np.ones((len(thetas), len(coefficients)))
    groups = np.zeros((len(coefficients), split.n_groups))
    groups[np.arange(len(coefficients)), split.group_of] = 1.0
    return (psi * coefficients) @ groups


def conditional_coefficients(
    split: SplitIndexSet, coefficients: np.ndarray, theta: np.ndarray
) -> dict[tuple[int, ...], float]:
    """Conditional coefficient of every distinct aleatory multi-index at ``theta``."""
    row = conditional_coefficient_matrix(split, coefficients, theta)[0]
    return {alpha: float(value) for alpha, value in zip(split.unique_aleatory, row)}


def conditional_model(split: SplitIndexSet, coefficients: np.ndarray, theta: np.ndarray) -> PceModel:
    """PCE over the aleatory variables only, with the hyper-parameters fixed at ``theta``."""
    row = conditional_coefficient_matrix(split, coefficients, theta)[0]
    return PceModel(
        index_set=split.unique_aleatory,
        coefficients=row,
        bases=split.aleatory_bases,
    )


def conditional_predict(
    split: SplitIndexSet, coefficients: np.ndarray, theta: np.ndarray, c: np.ndarray
) -> np.ndarray:
    """Conditional model evaluated at aleatory points ``c``."""
    model = conditional_model(split, coefficients, theta)
    return tensor_basis_matrix(model.index_set, model.bases, c) @ model.coefficients
