"""Auxiliary variable kinds of the augmented input space."""

from __future__ import annotations

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from backports.strenum import StrEnum

from scipy import stats

from tools.distributions.types import FamilyKind


class AuxKind(StrEnum):
    """Standardized auxiliary variable paired with each physical input."""

    STD_NORMAL = "std_normal"
    STD_GUMBEL = "std_gumbel"
    STD_EXPONENTIAL = "std_exponential"
    UNIT_UNIFORM = "unit_uniform"


class AuxRoute(StrEnum):
    """NATIVE uses the family's own standard variable, UNIFORM goes through its CDF."""

    NATIVE = "native"
    UNIFORM = "uniform"


class PhantomMode(StrEnum):
    """How hyper-parameter replicates of the different inputs are combined."""

    JOINT = "joint"
    INDEPENDENT = "independent"


_NATIVE_AUX = {
    FamilyKind.GAUSSIAN: AuxKind.STD_NORMAL,
    FamilyKind.LOGNORMAL: AuxKind.STD_NORMAL,
    FamilyKind.GUMBEL: AuxKind.STD_GUMBEL,
    FamilyKind.WEIBULL: AuxKind.STD_EXPONENTIAL,
    FamilyKind.UNIFORM: AuxKind.UNIT_UNIFORM,
}


def aux_kind_for(kind: FamilyKind, route: AuxRoute = AuxRoute.NATIVE) -> AuxKind:
    if route == AuxRoute.UNIFORM:
        return AuxKind.UNIT_UNIFORM
    return _NATIVE_AUX[kind]


def aux_law(kind: AuxKind) -> stats.distributions.rv_frozen:
    """Reference distribution of an auxiliary variable."""
    if kind == AuxKind.STD_NORMAL:
        return stats.norm()
    if kind == AuxKind.STD_GUMBEL:
        return stats.gumbel_r()
    if kind == AuxKind.STD_EXPONENTIAL:
        return stats.expon()
    return stats.uniform()
