"""Least-squares calibration of PCE coefficients and error estimators."""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
from scipy import linalg

from core.exceptions import DegenerateDesign, DegenerateValidation, DimensionMismatch, RankDeficient
from models import ExperimentalDesign
from tools.polynomials.bases import UnivariateBasis
from tools.polynomials.multi_index import MultiIndexSet, tensor_basis_matrix

from .model import PceModel

logger = logging.getLogger(__name__)

_HAT_LIMIT = 1.0 - 1e-12


def _design_points(design: ExperimentalDesign | np.ndarray) -> np.ndarray:
    if isinstance(design, ExperimentalDesign):
        return design.points
    return np.atleast_2d(np.asarray(design, dtype=float))


def information_matrix(
    design: ExperimentalDesign | np.ndarray,
    index_set: MultiIndexSet,
    bases: Sequence[UnivariateBasis],
) -> np.ndarray:
    """F[n, j] = psi_j(design point n).

    Raises:
        DimensionMismatch: If the design, index set and bases disagree.
    """
    points = _design_points(design)
    if len(points) == 0 or len(index_set) == 0:
        raise DimensionMismatch("information matrix needs a non-empty design and index set", module="pce")
    if points.shape[1] != index_set.dim:
        raise DimensionMismatch(
            f"design has {points.shape[1]} columns, index set dimension is {index_set.dim}",
            module="pce",
        )
    return tensor_basis_matrix(index_set, bases, points)


def _pivoted_qr(F: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n_rows, n_cols = F.shape
    if n_rows < n_cols:
        raise RankDeficient(f"{n_cols} basis functions but only {n_rows} design rows")
    Q, R, piv = linalg.qr(F, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    tol = np.finfo(float).eps * max(F.shape) * (diag[0] if diag.size else 0.0)
    rank = int(np.sum(diag > tol))
    if rank < n_cols:
        raise RankDeficient(
            f"information matrix has rank {rank} < {n_cols}; shrink the index set or enlarge the design"
        )
    return Q, R, piv


def ols_fit(F: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Least-squares coefficients through a column-pivoted QR factorization.

    Raises:
        RankDeficient: If F has fewer rows than columns or loses column rank.
    """
    F = np.atleast_2d(np.asarray(F, dtype=float))
    Y = np.asarray(Y, dtype=float).ravel()
    Q, R, piv = _pivoted_qr(F)
    coefficients = np.empty(F.shape[1])
    coefficients[piv] = linalg.solve_triangular(R, Q.T @ Y)
    return coefficients


def hat_diagonal(F: np.ndarray) -> np.ndarray:
    """Diagonal of the projection F (F^T F)^-1 F^T."""
    Q, _, _ = _pivoted_qr(np.atleast_2d(np.asarray(F, dtype=float)))
    return np.sum(Q**2, axis=1)


def loo_correction(F: np.ndarray) -> float:
    """Small-sample correction N/(N-P) (1 + tr(C^-1)/N), C = F^T F / N."""
    n_rows, n_cols = F.shape
    if n_rows <= n_cols:
        return np.inf
    _, R, _ = _pivoted_qr(F)
    r_inv = linalg.solve_triangular(R, np.eye(n_cols))
    return n_rows / (n_rows - n_cols) * (1.0 + float(np.sum(r_inv**2)))


def _loo_from(F: np.ndarray, Y: np.ndarray, coefficients: np.ndarray, corrected: bool) -> float:
    h = hat_diagonal(F)
    if np.any(h >= _HAT_LIMIT):
        raise DegenerateDesign(
            f"{int(np.sum(h >= _HAT_LIMIT))} design rows have leverage 1; leave-one-out is undefined"
        )
    residuals = (Y - F @ coefficients) / (1.0 - h)
    variance = np.var(Y, ddof=1) if len(Y) > 1 else 0.0
    error = float(np.mean(residuals**2) / (variance if variance > 0 else 1.0))
    if corrected:
        error *= loo_correction(F)
    return error


def loo_error(
    model: PceModel, design: ExperimentalDesign, corrected: bool = False
) -> float:
    """Leave-one-out error of ``model`` on its training design.

    Uses the hat-matrix shortcut mean((r_n / (1 - h_n))^2) relative to the
    sample variance of the responses, so a constant-only model scores about 1.
    Constant responses are scored in absolute terms.

    Raises:
        DegenerateDesign: If any row has leverage >= 1 - 1e-12.
    """
    F = information_matrix(design, model.index_set, model.bases)
    return _loo_from(F, design.responses, model.coefficients, corrected)


def rel_gen_error(
    model: PceModel, validation_points: np.ndarray, validation_responses: np.ndarray
) -> float:
    """Sum of squared prediction errors over the sum of squared deviations.

    Raises:
        DegenerateValidation: With fewer than two points or constant responses.
    """
    w = np.asarray(validation_responses, dtype=float).ravel()
    if w.size < 2:
        raise DegenerateValidation("validation needs at least two points")
    spread = np.sum((w - w.mean()) ** 2)
    if spread == 0.0:
        raise DegenerateValidation("validation responses have zero variance")
    predicted = model.predict(validation_points)
    return float(np.sum((w - predicted) ** 2) / spread)
