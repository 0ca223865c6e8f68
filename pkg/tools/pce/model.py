"""Fitted polynomial chaos expansion."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from core.exceptions import DimensionMismatch
from tools.polynomials.bases import UnivariateBasis
from tools.polynomials.multi_index import MultiIndexSet, tensor_basis_matrix


@dataclass(frozen=True, eq=False)
class PceModel:
    """Coefficients a_alpha of an expansion over orthonormal tensor polynomials.

    Attributes:
        index_set: Retained multi-indices.
        coefficients: One coefficient per member of ``index_set``.
        bases: One univariate basis per dimension.
        aleatory_dims: Dimensions carrying aleatory variables.
        epistemic_dims: Dimensions carrying standardized hyper-parameters.
        loo: Leave-one-out error of the fit (relative to response variance).
        degree: Candidate total degree the model was selected at.
    """

    index_set: MultiIndexSet
    coefficients: np.ndarray
    bases: tuple[UnivariateBasis, ...]
    aleatory_dims: tuple[int, ...] = ()
    epistemic_dims: tuple[int, ...] = ()
    loo: float = float("nan")
    degree: int = 0
    candidate_size: int = field(default=0, compare=False)

    def __post_init__(self):
        coefficients = np.asarray(self.coefficients, dtype=float).ravel()
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "bases", tuple(self.bases))
        if len(coefficients) != len(self.index_set):
            raise DimensionMismatch(
                f"{len(coefficients)} coefficients for {len(self.index_set)} multi-indices",
                module="pce",
            )
        if len(self.bases) != self.index_set.dim:
            raise DimensionMismatch(
                f"{len(self.bases)} bases for dimension {self.index_set.dim}", module="pce"
            )
        if not self.aleatory_dims and not self.epistemic_dims:
            object.__setattr__(self, "aleatory_dims", tuple(range(self.index_set.dim)))

    @property
    def dim(self) -> int:
        return self.index_set.dim

    @property
    def n_terms(self) -> int:
        return len(self.index_set)

    @property
    def mean(self) -> float:
        zero = (0,) * self.dim
        return float(self.coefficients[self.index_set.index_of(zero)]) if zero in self.index_set else 0.0

    @property
    def variance(self) -> float:
        nonzero = self.index_set.array.sum(axis=1) > 0
        return float(np.sum(self.coefficients[nonzero] ** 2))

    def predict(self, points: Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
        return tensor_basis_matrix(self.index_set, self.bases, points) @ self.coefficients
