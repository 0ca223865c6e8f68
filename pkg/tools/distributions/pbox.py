"""Parametric probability-boxes: families with interval-valued hyper-parameters."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from core.exceptions import InvalidParams

from .families import DistributionFamily

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 33


@dataclass(frozen=True)
class HyperParamBox:
    """Hyper-rectangle of hyper-parameter intervals.

    Degenerate intervals (lower == upper) denote precisely known parameters.
    """

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.lower) != len(self.upper):
            raise InvalidParams("box bounds must have equal lengths")
        for lo, hi in zip(self.lower, self.upper):
            if not lo <= hi:
                raise InvalidParams(f"interval [{lo}, {hi}] has lower > upper")

    @classmethod
    def from_values(cls, values: Sequence[float | Sequence[float]]) -> "HyperParamBox":
        """Build a box from scalars (precise) and [lower, upper] pairs."""
        lower, upper = [], []
        for value in values:
            if isinstance(value, (int, float)):
                lower.append(float(value))
                upper.append(float(value))
            else:
                lo, hi = value
                lower.append(float(lo))
                upper.append(float(hi))
        return cls(tuple(lower), tuple(upper))

    @property
    def size(self) -> int:
        return len(self.lower)

    @property
    def epistemic(self) -> tuple[int, ...]:
        """Indices of the non-degenerate intervals."""
        return tuple(k for k, (lo, hi) in enumerate(zip(self.lower, self.upper)) if hi > lo)

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (np.asarray(self.lower) + np.asarray(self.upper))

    def corners(self) -> np.ndarray:
        """All 2^n corners (degenerate intervals contribute a single value)."""
        axes = [sorted({lo, hi}) for lo, hi in zip(self.lower, self.upper)]
        return np.array(list(itertools.product(*axes)), dtype=float)

    def grid(self, points: int) -> np.ndarray:
        """Full factorial grid with ``points`` values per non-degenerate axis."""
        axes = [
            np.linspace(lo, hi, points) if hi > lo else np.array([lo])
            for lo, hi in zip(self.lower, self.upper)
        ]
        return np.array(list(itertools.product(*axes)), dtype=float)

    def contains(self, theta: np.ndarray, atol: float = 1e-12) -> bool:
        theta = np.asarray(theta, dtype=float)
        return bool(
            np.all(theta >= np.asarray(self.lower) - atol)
            and np.all(theta <= np.asarray(self.upper) + atol)
        )


@dataclass(frozen=True)
class ParametricPBox:
    """A distribution family whose hyper-parameters live in a box."""

    family: DistributionFamily
    box: HyperParamBox

    def __post_init__(self) -> None:
        if self.box.size != self.family.n_params:
            raise InvalidParams(
                f"{self.family.kind} needs {self.family.n_params} parameters, "
                f"box has {self.box.size}"
            )
        # Constraints must hold over the whole box; corners suffice for the
        # shipped families since every constraint is monotone in each parameter.
        self.family.native(self.box.corners())

    @classmethod
    def from_params(
        cls,
        family: DistributionFamily,
        params: Mapping[str, float | Sequence[float]],
    ) -> "ParametricPBox":
        """Build a p-box from a ``{name: value | [lower, upper]}`` mapping."""
        missing = set(family.param_names) - set(params)
        extra = set(params) - set(family.param_names)
        if missing or extra:
            raise InvalidParams(
                f"{family.kind}/{family.parameterization} expects parameters "
                f"{family.param_names}; missing={sorted(missing)} extra={sorted(extra)}"
            )
        box = HyperParamBox.from_values([params[name] for name in family.param_names])
        return cls(family=family, box=box)

    @property
    def epistemic_names(self) -> tuple[str, ...]:
        return tuple(self.family.param_names[k] for k in self.box.epistemic)

    def cdf(self, x, theta) -> np.ndarray:
        return self.family.cdf(x, theta)


def pbox_bounds(
    pbox: ParametricPBox,
    x: float,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> tuple[float, float]:
    """Lower and upper boundary curves of a parametric p-box at ``x``.

    Corners of the hyper-parameter box are exact for families whose CDF is
    monotone in every parameter. For the other parameterizations a dense grid
    (``grid_points`` per parameter) is added to the corners.
    """
    candidates = pbox.box.corners()
    if not pbox.family.monotone_in_params:
        logger.debug(
            "Using %d-point grid for p-box bounds of %s/%s",
            grid_points,
            pbox.family.kind,
            pbox.family.parameterization,
        )
        candidates = np.vstack([candidates, pbox.box.grid(grid_points)])
    values = np.atleast_1d(pbox.family.cdf(x, candidates))
    return float(np.min(values)), float(np.max(values))
