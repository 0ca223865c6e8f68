from unittest import TestCase

from pydantic import ValidationError


class TestSettings(TestCase):
    def setUp(self):
        from core.config import Settings

        self.Settings = Settings

    def test_log_level_is_normalized(self):
        self.assertEqual(self.Settings(LOG_LEVEL="debug").LOG_LEVEL, "DEBUG")

    def test_invalid_log_level_falls_back_to_info(self):
        self.assertEqual(self.Settings(LOG_LEVEL="chatty").LOG_LEVEL, "INFO")

    def test_significant_digits_are_bounded(self):
        with self.assertRaises(ValidationError):
            self.Settings(JSON_SIGNIFICANT_DIGITS=40)

    def test_numerical_defaults(self):
        s = self.Settings()
        self.assertEqual(s.JSON_SIGNIFICANT_DIGITS, 12)
        self.assertEqual(s.STIELTJES_MAX_DEGREE, 30)
        self.assertAlmostEqual(s.LOO_WARNING_THRESHOLD, 1e-2)
        self.assertAlmostEqual(s.ORACLE_CALL_WARNING, 1e7)
