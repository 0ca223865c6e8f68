"""Settings of sparse PCE regression."""

from __future__ import annotations

from dataclasses import dataclass
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from backports.strenum import StrEnum


class SelectionMethod(StrEnum):
    """How the retained basis is chosen from the candidate set."""

    LARS = "lars"
    OLS = "ols"


@dataclass(frozen=True)
class PceSettings:
    """Regression settings.

    Attributes:
        p_max: Highest total degree tried by the degree-adaptive fit.
        q: Hyperbolic truncation parameter of the candidate sets.
        selection: Basis selection method.
        loo_target: Leave-one-out error below which fitting stops early.
        prune_tol: Relative magnitude under which refit coefficients are dropped.
        candidate_factor: Candidate sets larger than this multiple of the
            design size are truncated before selection.
        path_patience: LARS path points scored after the last improvement.
    """

    p_max: int = 10
    q: float = 1.0
    selection: SelectionMethod = SelectionMethod.LARS
    loo_target: float = 1e-12
    prune_tol: float = 1e-10
    candidate_factor: int = 5
    path_patience: int = 50
