import math
from unittest import TestCase

import numpy as np

from core.exceptions import DimensionMismatch, InvalidParams
from tools.testbeds.analytic import OscillatorModel, ProductModel, f1, sdof


class TestProduct(TestCase):
    def test_values(self):
        self.assertEqual(f1([2.0, 3.0]), 6.0)
        self.assertEqual(f1([0.0, 17.0]), 0.0)
        self.assertEqual(f1([-1.5, 2.0]), -3.0)
        np.testing.assert_array_equal(f1(np.array([[1.0, 2.0], [3.0, 4.0]])), [2.0, 12.0])


class TestOscillator(TestCase):
    def test_reference_point(self):
        expected = 1.5 - 2.0 / 1.1 * math.sin(math.sqrt(1.1) / 2.0)
        self.assertAlmostEqual(sdof(0.5, 1.0, 1.0, 1.0, 0.1, 1.0), expected, places=12)
        self.assertAlmostEqual(expected, 0.58964, places=4)

    def test_unloaded(self):
        self.assertAlmostEqual(sdof(0.4, 0.0, 1.0, 1.0, 0.1, 1.0), 1.2)

    def test_load_term_is_scale_invariant(self):
        base = sdof(0.5, 1.0, 1.0, 1.0, 0.1, 1.0)
        scaled = sdof(0.5, 2.0, 1.0, 2.0, 0.2, 2.0)
        self.assertAlmostEqual(base, scaled, places=12)

    def test_increasing_in_r(self):
        h = 1e-6
        slope = (sdof(0.5 + h, 1.0, 1.0, 1.0, 0.1, 1.0) - sdof(0.5 - h, 1.0, 1.0, 1.0, 0.1, 1.0)) / (2 * h)
        self.assertAlmostEqual(slope, 3.0, places=6)

    def test_invalid_parameters(self):
        with self.assertRaises(InvalidParams):
            sdof(0.5, 1.0, 1.0, 1.0, 0.1, 0.0)
        with self.assertRaises(InvalidParams):
            sdof(0.5, 1.0, 1.0, -0.1, 0.0, 1.0)

    def test_vectorized(self):
        x = np.array([[0.5, 1.0, 1.0, 1.0, 0.1, 1.0], [0.4, 0.0, 1.0, 1.0, 0.1, 1.0]])
        np.testing.assert_allclose(OscillatorModel().evaluate(x), [sdof(*x[0]), 1.2])


class TestEvaluationLedger(TestCase):
    def test_counts_charged_rows(self):
        model = ProductModel()
        self.assertEqual(model.evaluate([2.0, 3.0]), 6.0)
        model.evaluate(np.ones((10, 2)))
        model.evaluate(np.ones((5, 2)), charge=False)
        self.assertEqual(model.evaluations, 11)
        model.reset_counter()
        self.assertEqual(model.evaluations, 0)

    def test_wrong_input_count(self):
        with self.assertRaises(DimensionMismatch):
            ProductModel().evaluate(np.ones((3, 4)))
