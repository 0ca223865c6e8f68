"""Error hierarchy shared by all computational modules.

Every error carries the name of the module that raised it so the command line
front end can report where an analysis failed.
"""

from __future__ import annotations


class IsobolError(Exception):
    """Base class of all errors raised by the analysis pipeline."""

    module: str = "isobol"

    def __init__(self, message: str, module: str | None = None) -> None:
        super().__init__(message)
        if module is not None:
            self.module = module

    def __str__(self) -> str:
        return f"[{self.module}] {super().__str__()}"


class ConfigError(IsobolError):
    module = "cli"


class InvalidParams(IsobolError):
    module = "distributions"


class DomainError(IsobolError):
    module = "distributions"


class DimensionMismatch(IsobolError):
    module = "polynomials"


class QuadratureFailure(IsobolError):
    module = "polynomials"


class RankDeficient(IsobolError):
    module = "pce"


class DegenerateDesign(IsobolError):
    module = "pce"


class DegenerateValidation(IsobolError):
    module = "pce"


class ZeroVariance(IsobolError):
    module = "sobol"


class InfeasibleBase(IsobolError):
    module = "augmented"


class OptimizationFailed(IsobolError):
    module = "optimizer"


class UnknownModel(IsobolError):
    module = "models"


class SingularStiffness(IsobolError):
    module = "models"
