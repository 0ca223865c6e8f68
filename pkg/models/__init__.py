from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class ExperimentalDesign:
    """Regression design in augmented space.

    Attributes:
        points: Standardized augmented coordinates, one row per regression row.
        responses: Model response of each row.
        run_ids: Model evaluation each row originates from.
        physical: Physical input of each row, when known.
        replicates: Rows generated per base point (phantom designs only).
    """

    points: np.ndarray
    responses: np.ndarray
    run_ids: np.ndarray
    physical: np.ndarray | None = None
    replicates: np.ndarray | None = None

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))
        self.responses = np.asarray(self.responses, dtype=float).ravel()
        self.run_ids = np.asarray(self.run_ids, dtype=int).ravel()
        if not len(self.points) == len(self.responses) == len(self.run_ids):
            raise ValueError("points, responses and run_ids must have the same number of rows")

    @property
    def n_rows(self) -> int:
        return len(self.points)

    @property
    def n_runs(self) -> int:
        return len(np.unique(self.run_ids))


@dataclass
class SobolSpectrum:
    """Partial variances of a Sobol' decomposition keyed by sorted dimension tuples."""

    total_variance: float
    partial: dict[tuple[int, ...], float]

    @property
    def indices(self) -> dict[tuple[int, ...], float]:
        return {subset: value / self.total_variance for subset, value in self.partial.items()}

    def first_order(self, i: int) -> float:
        return self.partial.get((i,), 0.0) / self.total_variance

    def total(self, i: int) -> float:
        return sum(v for s, v in self.partial.items() if i in s) / self.total_variance


@dataclass
class SobolInterval:
    """Bounds of one imprecise Sobol' index with the hyper-parameters attaining them."""

    subset: tuple[int, ...]
    order: str
    lower: float
    upper: float
    argmin_theta: np.ndarray
    argmax_theta: np.ndarray
    name: str = ""

    @property
    def impact(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def epistemic_width(self) -> float:
        return self.upper - self.lower


@dataclass
class McEstimate:
    value: float
    std_error: float
    n: int


@dataclass
class OptimizationResult:
    theta: np.ndarray
    value: float
    n_evaluations: int = 0
    n_excluded: int = 0
    trace: list[float] = field(default_factory=list)


@dataclass
class SobolSample:
    """Sobol' index values at sampled hyper-parameters; excluded draws are counted, not stored."""

    values: np.ndarray
    n_excluded: int = 0

    def summary(self) -> dict[str, float]:
        if self.values.size == 0:
            return {"mean": float("nan"), "std": float("nan"), "q05": float("nan"), "q50": float("nan"), "q95": float("nan")}
        q05, q50, q95 = np.quantile(self.values, [0.05, 0.5, 0.95])
        return {
            "mean": float(np.mean(self.values)),
            "std": float(np.std(self.values, ddof=1)) if self.values.size > 1 else 0.0,
            "q05": float(q05),
            "q50": float(q50),
            "q95": float(q95),
        }


@dataclass
class DoubleLoopBounds:
    """Min/max of Monte Carlo Sobol' estimates over a hyper-parameter grid, per input."""

    first_lower: np.ndarray
    first_upper: np.ndarray
    total_lower: np.ndarray
    total_upper: np.ndarray
    worst_std_error: float
    n_cells: int
    model_calls: int
