from unittest import TestCase

import numpy as np

from core.exceptions import InvalidParams
from tools.distributions.families import DistributionFamily
from tools.distributions.pbox import HyperParamBox, ParametricPBox, pbox_bounds
from tools.distributions.types import FamilyKind, Parameterization


class TestParametricPBox(TestCase):
    def setUp(self):
        self.gaussian = ParametricPBox.from_params(
            DistributionFamily(FamilyKind.GAUSSIAN), {"mean": [-0.5, 0.5], "std": 1.0}
        )

    def test_box_from_mixed_values(self):
        box = HyperParamBox.from_values([[-1.0, 1.0], 0.5])
        self.assertEqual(box.lower, (-1.0, 0.5))
        self.assertEqual(box.epistemic, (0,))
        np.testing.assert_allclose(box.center, [0.0, 0.5])
        self.assertEqual(box.corners().shape, (2, 2))
        self.assertEqual(box.grid(5).shape, (5, 2))

    def test_reversed_interval(self):
        with self.assertRaises(InvalidParams):
            HyperParamBox.from_values([[1.0, -1.0]])

    def test_parameter_names_must_match(self):
        family = DistributionFamily(FamilyKind.GAUSSIAN)
        with self.assertRaises(InvalidParams):
            ParametricPBox.from_params(family, {"mean": 0.0})
        with self.assertRaises(InvalidParams):
            ParametricPBox.from_params(family, {"mean": 0.0, "std": 1.0, "skew": 0.0})

    def test_constraints_hold_over_the_box(self):
        with self.assertRaises(InvalidParams):
            ParametricPBox.from_params(DistributionFamily(FamilyKind.GAUSSIAN), {"mean": 0.0, "std": [-0.1, 1.0]})

    def test_gaussian_envelope(self):
        lower, upper = pbox_bounds(self.gaussian, 0.0)
        self.assertAlmostEqual(lower, 0.3085375387259869, places=12)
        self.assertAlmostEqual(upper, 0.6914624612740131, places=12)
        self.assertEqual(self.gaussian.epistemic_names, ("mean",))

    def test_envelope_of_non_monotone_parameterization(self):
        pbox = ParametricPBox.from_params(
            DistributionFamily(FamilyKind.LOGNORMAL, Parameterization.MEAN_STD),
            {"mean": [95.0, 105.0], "std": [13.0, 17.0]},
        )
        lower, upper = pbox_bounds(pbox, 100.0)
        self.assertLess(lower, upper)
        for theta in pbox.box.grid(3):
            value = float(pbox.cdf(100.0, theta))
            self.assertGreaterEqual(value, lower - 1e-12)
            self.assertLessEqual(value, upper + 1e-12)
