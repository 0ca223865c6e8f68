"""Univariate orthonormal polynomial families."""

from __future__ import annotations

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from backports.strenum import StrEnum


class BasisKind(StrEnum):
    """Orthonormal polynomial families and their reference densities.

    LEGENDRE_SHIFTED_01: uniform density on [0, 1].
    LEGENDRE_SYMMETRIC: uniform density 1/2 on [-1, 1].
    HERMITE_PROBABILIST: standard normal density.
    LAGUERRE_STANDARD: standard exponential density.
    NUMERIC_STIELTJES: any density, recurrence built numerically.
    """

    LEGENDRE_SHIFTED_01 = "legendre_shifted_01"
    LEGENDRE_SYMMETRIC = "legendre_symmetric"
    HERMITE_PROBABILIST = "hermite_probabilist"
    LAGUERRE_STANDARD = "laguerre_standard"
    NUMERIC_STIELTJES = "numeric_stieltjes"


MAX_SUPPORTED_DEGREE = 30
