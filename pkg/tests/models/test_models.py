import math
from unittest import TestCase

import numpy as np

from models import ExperimentalDesign, SobolInterval, SobolSample, SobolSpectrum


class TestModels(TestCase):
    def test_design_counts_rows_and_runs(self):
        design = ExperimentalDesign(points=np.zeros((6, 2)), responses=np.arange(6), run_ids=[0, 0, 1, 1, 2, 2])
        self.assertEqual(design.n_rows, 6)
        self.assertEqual(design.n_runs, 3)

    def test_design_rejects_mismatched_lengths(self):
        with self.assertRaises(ValueError):
            ExperimentalDesign(points=np.zeros((3, 2)), responses=[1.0, 2.0], run_ids=[0, 1, 2])

    def test_spectrum_first_and_total(self):
        spectrum = SobolSpectrum(total_variance=14.0, partial={(0,): 1.0, (1,): 4.0, (0, 1): 9.0})
        self.assertAlmostEqual(spectrum.first_order(0), 1 / 14)
        self.assertAlmostEqual(spectrum.total(0), 10 / 14)
        self.assertAlmostEqual(sum(spectrum.indices.values()), 1.0)

    def test_interval_impact_and_width(self):
        interval = SobolInterval((0,), "first", 0.2, 0.6, np.zeros(1), np.ones(1), "x1")
        self.assertAlmostEqual(interval.impact, 0.4)
        self.assertAlmostEqual(interval.epistemic_width, 0.4)

    def test_sample_summary(self):
        summary = SobolSample(values=np.linspace(0.0, 1.0, 101)).summary()
        self.assertAlmostEqual(summary["mean"], 0.5)
        self.assertAlmostEqual(summary["q50"], 0.5)
        self.assertAlmostEqual(summary["q05"], 0.05)
        empty = SobolSample(values=np.array([]), n_excluded=3).summary()
        self.assertTrue(math.isnan(empty["mean"]))
