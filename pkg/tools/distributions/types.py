"""Distribution family kinds and parameterizations."""

from __future__ import annotations

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from backports.strenum import StrEnum


class FamilyKind(StrEnum):
    """Marginal distribution families supported by parametric p-boxes."""

    GAUSSIAN = "gaussian"
    LOGNORMAL = "lognormal"
    GUMBEL = "gumbel"
    WEIBULL = "weibull"
    UNIFORM = "uniform"


class Parameterization(StrEnum):
    """How the (possibly interval-valued) hyper-parameters are given."""

    MEAN_STD = "mean_std"
    NATIVE = "native"
    SUPPORT_BOUNDS = "support_bounds"


# Euler-Mascheroni constant used by the Gumbel moment relations.
EULER_GAMMA = 0.5772156649015329

PARAM_NAMES: dict[tuple[FamilyKind, Parameterization], tuple[str, ...]] = {
    (FamilyKind.GAUSSIAN, Parameterization.MEAN_STD): ("mean", "std"),
    (FamilyKind.GAUSSIAN, Parameterization.NATIVE): ("mean", "std"),
    (FamilyKind.LOGNORMAL, Parameterization.MEAN_STD): ("mean", "std"),
    (FamilyKind.LOGNORMAL, Parameterization.NATIVE): ("lambda", "zeta"),
    (FamilyKind.GUMBEL, Parameterization.MEAN_STD): ("mean", "std"),
    (FamilyKind.GUMBEL, Parameterization.NATIVE): ("loc", "scale"),
    (FamilyKind.WEIBULL, Parameterization.MEAN_STD): ("mean", "std"),
    (FamilyKind.WEIBULL, Parameterization.NATIVE): ("scale", "shape"),
    (FamilyKind.UNIFORM, Parameterization.MEAN_STD): ("mean", "std"),
    (FamilyKind.UNIFORM, Parameterization.SUPPORT_BOUNDS): ("lower", "upper"),
}


def default_parameterization(kind: FamilyKind) -> Parameterization:
    """Parameterization used when a declaration does not name one.

    Mean/std for Gaussian, Lognormal and Gumbel, native (scale, shape) for
    Weibull and support bounds for Uniform.
    """
    if kind == FamilyKind.WEIBULL:
        return Parameterization.NATIVE
    if kind == FamilyKind.UNIFORM:
        return Parameterization.SUPPORT_BOUNDS
    return Parameterization.MEAN_STD
