"""Product model f1 = x1 * x2 with Gaussian p-boxes, mean in [-1, 1], std in [0.5, 1].

Augmented coordinates are ordered (mu1, sigma1, xi1, mu2, sigma2, xi2). With
mu = s_mu and sigma = 0.75 + 0.25 s_sigma the augmented model is a polynomial
whose exact expansion over Legendre x Hermite polynomials is written below.
"""

import numpy as np

from tools.augmented.space import AugmentedSpace
from tools.distributions.families import DistributionFamily
from tools.distributions.pbox import ParametricPBox
from tools.distributions.types import FamilyKind
from tools.pce.model import PceModel
from tools.polynomials.multi_index import MultiIndexSet

_C = 0.25 / np.sqrt(3.0)

F1_EXPANSION = {
    (0, 0, 0, 0, 0, 0): 0.0,
    (1, 0, 0, 1, 0, 0): 1.0 / 3.0,
    (1, 0, 0, 0, 0, 1): 0.75 / np.sqrt(3.0),
    (1, 0, 0, 0, 1, 1): 1.0 / 12.0,
    (0, 0, 1, 1, 0, 0): 0.75 / np.sqrt(3.0),
    (0, 1, 1, 1, 0, 0): 1.0 / 12.0,
    (0, 0, 1, 0, 0, 1): 0.5625,
    (0, 1, 1, 0, 0, 1): 0.75 * _C,
    (0, 0, 1, 0, 1, 1): 0.75 * _C,
    (0, 1, 1, 0, 1, 1): _C**2,
}


def f1_pbox() -> ParametricPBox:
    return ParametricPBox.from_params(
        DistributionFamily(FamilyKind.GAUSSIAN), {"mean": [-1.0, 1.0], "std": [0.5, 1.0]}
    )


def f1_space() -> AugmentedSpace:
    return AugmentedSpace.from_pboxes([f1_pbox(), f1_pbox()], names=["x1", "x2"])


def f1_expansion() -> PceModel:
    space = f1_space()
    index_set = MultiIndexSet(F1_EXPANSION.keys())
    return PceModel(
        index_set=index_set,
        coefficients=np.array([F1_EXPANSION[alpha] for alpha in index_set]),
        bases=space.bases,
        aleatory_dims=space.aleatory_dims,
        epistemic_dims=space.epistemic_dims,
    )


def f1_first_order(mu1, sigma1, mu2, sigma2) -> float:
    """Closed-form first-order index of x1 for fixed hyper-parameters."""
    variance = (mu2 * sigma1) ** 2 + (mu1 * sigma2) ** 2 + (sigma1 * sigma2) ** 2
    return (mu2 * sigma1) ** 2 / variance
