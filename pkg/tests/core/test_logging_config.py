import logging
import tempfile
import warnings
from pathlib import Path
from unittest import TestCase

from core.logging_config import RUN_LOG_FILENAME, attach_run_log, detach_run_log, setup_logging


class TestLoggingConfig(TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        logging.captureWarnings(False)
        root = logging.getLogger()
        for handler in list(root.handlers):
            handler.close()
            root.removeHandler(handler)
        self.tmp.cleanup()

    def _flush(self):
        for handler in logging.getLogger().handlers:
            handler.flush()

    def test_file_and_console_handlers(self):
        root = setup_logging(log_level="WARNING", log_dir=Path(self.tmp.name), log_filename="isobol.log")
        self.assertEqual(len(root.handlers), 2)
        logging.getLogger("tests").info("written to file only")
        self._flush()
        text = (Path(self.tmp.name) / "isobol.log").read_text(encoding="utf-8")
        self.assertIn("written to file only", text)

    def test_console_can_be_disabled(self):
        root = setup_logging(log_dir=Path(self.tmp.name), console_output=False)
        self.assertEqual(len(root.handlers), 1)
        self.assertEqual(logging.getLogger("sklearn").level, logging.WARNING)

    def test_numerical_warnings_reach_the_log(self):
        setup_logging(log_dir=Path(self.tmp.name), console_output=False)
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.warn("overflow encountered in exp", RuntimeWarning)
        self._flush()
        text = (Path(self.tmp.name) / "isobol.log").read_text(encoding="utf-8")
        self.assertIn("overflow encountered in exp", text)

    def test_run_log_in_output_directory(self):
        setup_logging(log_dir=Path(self.tmp.name), console_output=False)
        output_dir = Path(self.tmp.name) / "results" / "f1"
        handler = attach_run_log(output_dir)
        logging.getLogger("tools.analysis").info("Selected degree %d", 3)
        detach_run_log(handler)
        logging.getLogger("tools.analysis").info("after the run")

        self.assertNotIn(handler, logging.getLogger().handlers)
        text = (output_dir / RUN_LOG_FILENAME).read_text(encoding="utf-8")
        self.assertIn("Selected degree 3", text)
        self.assertNotIn("after the run", text)

        handler = attach_run_log(output_dir)
        detach_run_log(handler)
        self.assertNotIn("Selected degree 3", (output_dir / RUN_LOG_FILENAME).read_text(encoding="utf-8"))
