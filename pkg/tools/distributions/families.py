"""Marginal distribution families with CDF, inverse CDF, PDF and supports.

Hyper-parameters are passed as arrays whose last axis holds the parameters in
the family's parameterization (see ``PARAM_NAMES``). All functions broadcast
over leading axes so that a whole experimental design can be transformed in
one call.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import optimize, special, stats

from core.exceptions import DomainError, InvalidParams

from .types import (
    EULER_GAMMA,
    PARAM_NAMES,
    FamilyKind,
    Parameterization,
    default_parameterization,
)

logger = logging.getLogger(__name__)

ArrayLike = float | Sequence[float] | np.ndarray

_SQRT3 = np.sqrt(3.0)


_LOG_SHAPE_MIN = np.log(1e-3)
_LOG_SHAPE_MAX = np.log(1e6)


def _weibull_shape_from_cv(cv: float) -> float:
    """Solve Gamma(1+2/k)/Gamma(1+1/k)^2 - 1 = cv^2 for the shape k.

    The residual is taken in log form and decreases with k, so the bracket is
    widened until it changes sign or leaves [1e-3, 1e6].

    Raises:
        InvalidParams: If no shape in that range reproduces ``cv``.
    """
    if not np.isfinite(cv) or cv <= 0.0:
        raise InvalidParams(f"weibull: coefficient of variation {cv!r} must be finite and > 0")
    target = np.log1p(cv**2)

    def residual(log_k: float) -> float:
        k = np.exp(log_k)
        return special.gammaln(1.0 + 2.0 / k) - 2.0 * special.gammaln(1.0 + 1.0 / k) - target

    lo, hi = np.log(0.05), np.log(500.0)
    while residual(lo) < 0.0:
        if lo <= _LOG_SHAPE_MIN:
            raise InvalidParams(f"weibull: coefficient of variation {cv:.6g} is too large")
        lo = max(lo - 2.0, _LOG_SHAPE_MIN)
    while residual(hi) > 0.0:
        if hi >= _LOG_SHAPE_MAX:
            raise InvalidParams(f"weibull: coefficient of variation {cv:.6g} is too small")
        hi = min(hi + 2.0, _LOG_SHAPE_MAX)
    return float(np.exp(optimize.brentq(residual, lo, hi, xtol=1e-14)))


_weibull_shape_vec = np.vectorize(_weibull_shape_from_cv, otypes=[float])


@dataclass(frozen=True)
class DistributionFamily:
    """A parametric family of marginal distributions.

    Attributes:
        kind: Distribution family.
        parameterization: How hyper-parameter vectors are interpreted.
    """

    kind: FamilyKind
    parameterization: Parameterization | None = None

    def __post_init__(self) -> None:
        if self.parameterization is None:
            object.__setattr__(
                self, "parameterization", default_parameterization(self.kind)
            )
        if (self.kind, self.parameterization) not in PARAM_NAMES:
            raise InvalidParams(
                f"parameterization '{self.parameterization}' is not available "
                f"for the {self.kind} family"
            )

    @property
    def param_names(self) -> tuple[str, ...]:
        return PARAM_NAMES[(self.kind, self.parameterization)]

    @property
    def n_params(self) -> int:
        return len(self.param_names)

    @property
    def is_bounded(self) -> bool:
        """True when the support is bounded on both sides."""
        return self.kind == FamilyKind.UNIFORM

    @property
    def monotone_in_params(self) -> bool:
        """True when the CDF at fixed x is monotone in each hyper-parameter.

        For those families the p-box envelope is attained at box corners.
        """
        return not (
            self.parameterization == Parameterization.MEAN_STD
            and self.kind in (FamilyKind.LOGNORMAL, FamilyKind.WEIBULL)
        )

    # ---- parameter handling ----

    def _split(self, theta: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
        theta = np.asarray(theta, dtype=float)
        if theta.shape[-1] != self.n_params:
            raise InvalidParams(
                f"{self.kind} expects {self.n_params} parameters "
                f"{self.param_names}, got shape {theta.shape}"
            )
        return theta[..., 0], theta[..., 1]

    def native(self, theta: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
        """Convert hyper-parameters to the family's native pair.

        Native pairs are (mean, std) for Gaussian, (lambda, zeta) for
        Lognormal, (loc, scale) for Gumbel, (scale, shape) for Weibull and
        (lower, upper) for Uniform.

        Raises:
            InvalidParams: If the parameters violate the family constraints.
        """
        first, second = self._split(theta)
        kind, param = self.kind, self.parameterization

        if param == Parameterization.MEAN_STD and np.any(second <= 0.0):
            raise InvalidParams(f"{kind}: standard deviation must be > 0")

        if kind == FamilyKind.GAUSSIAN:
            if np.any(second <= 0.0):
                raise InvalidParams("gaussian: standard deviation must be > 0")
            return first, second

        if kind == FamilyKind.LOGNORMAL:
            if param == Parameterization.NATIVE:
                if np.any(second <= 0.0):
                    raise InvalidParams("lognormal: zeta must be > 0")
                return first, second
            if np.any(first <= 0.0):
                raise InvalidParams("lognormal: mean must be > 0")
            zeta = np.sqrt(np.log1p((second / first) ** 2))
            lam = np.log(first) - 0.5 * zeta**2
            return lam, zeta

        if kind == FamilyKind.GUMBEL:
            if param == Parameterization.NATIVE:
                if np.any(second <= 0.0):
                    raise InvalidParams("gumbel: scale must be > 0")
                return first, second
            beta = second * np.sqrt(6.0) / np.pi
            return first - beta * EULER_GAMMA, beta

        if kind == FamilyKind.WEIBULL:
            if param == Parameterization.NATIVE:
                if np.any(first <= 0.0) or np.any(second <= 0.0):
                    raise InvalidParams("weibull: scale and shape must be > 0")
                return first, second
            if np.any(first <= 0.0):
                raise InvalidParams("weibull: mean must be > 0")
            shape = _weibull_shape_vec(second / first)
            scale = first / np.exp(special.gammaln(1.0 + 1.0 / shape))
            return scale, shape

        # Uniform
        if param == Parameterization.SUPPORT_BOUNDS:
            lower, upper = first, second
        else:
            lower, upper = first - _SQRT3 * second, first + _SQRT3 * second
        if np.any(lower >= upper):
            raise InvalidParams("uniform: lower bound must be < upper bound")
        return lower, upper

    def frozen(self, theta: ArrayLike) -> stats.distributions.rv_frozen:
        """Return the scipy frozen distribution for the given parameters."""
        a, b = self.native(theta)
        if self.kind == FamilyKind.GAUSSIAN:
            return stats.norm(loc=a, scale=b)
        if self.kind == FamilyKind.LOGNORMAL:
            return stats.lognorm(s=b, scale=np.exp(a))
        if self.kind == FamilyKind.GUMBEL:
            return stats.gumbel_r(loc=a, scale=b)
        if self.kind == FamilyKind.WEIBULL:
            return stats.weibull_min(c=b, scale=a)
        return stats.uniform(loc=a, scale=b - a)

    # ---- probability functions ----

    def cdf(self, x: ArrayLike, theta: ArrayLike) -> np.ndarray:
        return self.frozen(theta).cdf(np.asarray(x, dtype=float))

    def pdf(self, x: ArrayLike, theta: ArrayLike) -> np.ndarray:
        return self.frozen(theta).pdf(np.asarray(x, dtype=float))

    def inv_cdf(self, p: ArrayLike, theta: ArrayLike) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if np.any((p <= 0.0) | (p >= 1.0)) or np.any(np.isnan(p)):
            raise DomainError("inverse CDF requires probabilities inside (0, 1)")
        return self.frozen(theta).ppf(p)

    def support(self, theta: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
        """Lower and upper support bounds; infinities are explicit."""
        a, b = self.native(theta)
        if self.kind == FamilyKind.UNIFORM:
            return a, b
        if self.kind in (FamilyKind.LOGNORMAL, FamilyKind.WEIBULL):
            return np.zeros_like(a), np.full_like(a, np.inf)
        return np.full_like(a, -np.inf), np.full_like(a, np.inf)


def cdf(family: DistributionFamily, x: ArrayLike, theta: ArrayLike) -> np.ndarray:
    """Conditional CDF F(x | theta) of a parametric family."""
    return family.cdf(x, theta)


def inv_cdf(family: DistributionFamily, p: ArrayLike, theta: ArrayLike) -> np.ndarray:
    """Inverse conditional CDF; p must lie in the open unit interval."""
    return family.inv_cdf(p, theta)
