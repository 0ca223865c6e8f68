from unittest import TestCase

import numpy as np

from core.exceptions import DomainError, OptimizationFailed, ZeroVariance
from tests.tools.f1_fixtures import f1_expansion, f1_first_order, f1_space
from tools.imprecise.bounds import (
    conditional_sobol,
    conditional_sobol_batch,
    pinched_sobol,
    point_mass_sampler,
    sobol_bounds,
    sobol_distribution,
    uniform_theta_sampler,
)
from tools.imprecise.reordering import conditional_model, split_indices
from tools.optimization.optimizer import OptimizerConfig
from tools.pce.model import PceModel
from tools.polynomials.multi_index import MultiIndexSet
from tools.sobol.indices import sobol_indices
from tools.sobol.types import SobolOrder

FAST = OptimizerConfig(population=20, generations=100, restarts=2, seed=0)


class TestConditionalSobol(TestCase):
    def setUp(self):
        self.model = f1_expansion()
        self.split = split_indices(self.model)

    def test_known_hyper_parameters(self):
        ones = np.ones(4)
        self.assertAlmostEqual(conditional_sobol(self.split, self.model.coefficients, (0,), ones), 1 / 3)
        self.assertAlmostEqual(
            conditional_sobol(self.split, self.model.coefficients, (0,), ones, SobolOrder.TOTAL), 2 / 3
        )
        self.assertAlmostEqual(
            conditional_sobol(self.split, self.model.coefficients, (0, 1), ones, SobolOrder.GROUP), 1 / 3
        )

    def test_matches_the_closed_form(self):
        thetas = np.random.default_rng(11).uniform(-1.0, 1.0, size=(100, 4))
        values = conditional_sobol_batch(self.split, self.model.coefficients, (0,), thetas)
        physical = f1_space().destandardize_theta(thetas)
        expected = [f1_first_order(*row) for row in physical]
        np.testing.assert_allclose(values, expected, atol=1e-12)

    def test_batch_agrees_with_the_conditional_model(self):
        thetas = np.random.default_rng(3).uniform(-1.0, 1.0, size=(8, 4))
        coefficients = self.model.coefficients
        first = conditional_sobol_batch(self.split, coefficients, (1,), thetas)
        total = conditional_sobol_batch(self.split, coefficients, (1,), thetas, SobolOrder.TOTAL)
        group = conditional_sobol_batch(self.split, coefficients, (0, 1), thetas, SobolOrder.GROUP)
        for k, theta in enumerate(thetas):
            spectrum = sobol_indices(conditional_model(self.split, coefficients, theta))
            self.assertAlmostEqual(first[k], spectrum.first_order(1), places=12)
            self.assertAlmostEqual(total[k], spectrum.total(1), places=12)
            self.assertAlmostEqual(group[k], spectrum.indices.get((0, 1), 0.0), places=12)

    def test_closed_index_of_all_inputs_is_one(self):
        theta = np.array([0.2, -0.4, 0.9, 0.1])
        value = conditional_sobol(self.split, self.model.coefficients, (0, 1), theta)
        self.assertAlmostEqual(value, 1.0)

    def test_pinched(self):
        self.assertAlmostEqual(pinched_sobol(self.split, self.model.coefficients, (0,)), 0.0)
        self.assertAlmostEqual(pinched_sobol(self.split, self.model.coefficients, (0,), SobolOrder.TOTAL), 1.0)

    def test_invalid_subset(self):
        with self.assertRaises(DomainError):
            conditional_sobol(self.split, self.model.coefficients, (2,), np.zeros(4))
        with self.assertRaises(DomainError):
            conditional_sobol(self.split, self.model.coefficients, (), np.zeros(4))


class TestSobolBounds(TestCase):
    def setUp(self):
        self.model = f1_expansion()
        self.split = split_indices(self.model)

    def test_first_order_bounds(self):
        interval = sobol_bounds(self.split, self.model.coefficients, (0,), SobolOrder.FIRST, FAST, name="x1")
        self.assertAlmostEqual(interval.lower, 0.0, places=3)
        self.assertAlmostEqual(interval.upper, 0.8, places=3)
        self.assertEqual(interval.name, "x1")
        self.assertEqual(interval.order, "first")
        # the maximum needs mu2 at an end of its interval and sigma2 at its lower end
        self.assertAlmostEqual(abs(interval.argmax_theta[2]), 1.0, places=3)
        self.assertAlmostEqual(interval.argmax_theta[3], -1.0, places=3)

    def test_total_bounds(self):
        interval = sobol_bounds(self.split, self.model.coefficients, (0,), SobolOrder.TOTAL, FAST)
        self.assertAlmostEqual(interval.lower, 0.2, places=3)
        self.assertAlmostEqual(interval.upper, 1.0, places=3)
        self.assertAlmostEqual(interval.impact, 0.6, places=3)
        self.assertAlmostEqual(interval.epistemic_width, 0.8, places=3)

    def test_interaction_bounds(self):
        interval = sobol_bounds(self.split, self.model.coefficients, (0, 1), SobolOrder.GROUP, FAST)
        self.assertAlmostEqual(interval.lower, 1 / 9, places=3)
        self.assertAlmostEqual(interval.upper, 1.0, places=3)

    def test_pinched_lies_inside(self):
        for order in SobolOrder:
            interval = sobol_bounds(self.split, self.model.coefficients, (1,), order, FAST)
            pinched = pinched_sobol(self.split, self.model.coefficients, (1,), order)
            self.assertLessEqual(interval.lower, pinched + 1e-9)
            self.assertGreaterEqual(interval.upper, pinched - 1e-9)

    def test_bounds_are_reproducible(self):
        first = sobol_bounds(self.split, self.model.coefficients, (0,), SobolOrder.FIRST, FAST)
        second = sobol_bounds(self.split, self.model.coefficients, (0,), SobolOrder.FIRST, FAST)
        self.assertEqual(first.lower, second.lower)
        self.assertEqual(first.upper, second.upper)
        np.testing.assert_array_equal(first.argmax_theta, second.argmax_theta)


class TestSobolDistribution(TestCase):
    def setUp(self):
        self.model = f1_expansion()
        self.split = split_indices(self.model)

    def test_uniform_hyper_parameters(self):
        sample = sobol_distribution(
            self.split, self.model.coefficients, (0,), SobolOrder.FIRST, uniform_theta_sampler(4), 2000, seed=5
        )
        self.assertEqual(sample.values.size, 2000)
        self.assertEqual(sample.n_excluded, 0)
        self.assertTrue(np.all(sample.values >= -1e-12))
        self.assertTrue(np.all(sample.values <= 0.8 + 1e-12))
        summary = sample.summary()
        self.assertLessEqual(summary["q05"], summary["q50"])
        self.assertLessEqual(summary["q50"], summary["q95"])

    def test_point_mass(self):
        sample = sobol_distribution(
            self.split, self.model.coefficients, (0,), SobolOrder.FIRST, point_mass_sampler(np.ones(4)), 10
        )
        np.testing.assert_allclose(sample.values, 1 / 3)
        self.assertEqual(sample.summary()["std"], 0.0)


class TestZeroConditionalVariance(TestCase):
    def setUp(self):
        space = f1_space()
        terms = {(0, 0, 0, 0, 0, 0): 1.0, (1, 0, 0, 0, 0, 0): 2.0}
        index_set = MultiIndexSet(terms)
        model = PceModel(
            index_set,
            [terms[alpha] for alpha in index_set],
            space.bases,
            aleatory_dims=space.aleatory_dims,
            epistemic_dims=space.epistemic_dims,
        )
        self.split = split_indices(model)
        self.coefficients = model.coefficients

    def test_pinched_raises(self):
        with self.assertRaises(ZeroVariance):
            pinched_sobol(self.split, self.coefficients, (0,))

    def test_bounds_raise(self):
        cfg = OptimizerConfig(population=10, generations=20, restarts=1, stagnation=5)
        with self.assertRaises(OptimizationFailed):
            sobol_bounds(self.split, self.coefficients, (0,), SobolOrder.FIRST, cfg)

    def test_distribution_excludes_every_draw(self):
        sample = sobol_distribution(
            self.split, self.coefficients, (0,), SobolOrder.TOTAL, uniform_theta_sampler(4), 50
        )
        self.assertEqual(sample.values.size, 0)
        self.assertEqual(sample.n_excluded, 50)
