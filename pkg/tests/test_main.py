import json
import tempfile
from pathlib import Path
from unittest import TestCase
from unittest.mock import patch

import main
from core.exceptions import RankDeficient
from tools.analysis.runner import SobolAnalysis

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


class TestMain(TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        patcher = patch("main.setup_logging")
        self.setup_logging = patcher.start()
        self.addCleanup(patcher.stop)

    def tearDown(self):
        self.tmp.cleanup()

    def _config(self, **overrides) -> Path:
        raw = json.loads((CONFIGS / "f1.json").read_text())
        raw.update(overrides)
        path = self.dir / "case.json"
        path.write_text(json.dumps(raw))
        return path

    def test_parser(self):
        args = main.build_parser().parse_args(["bounds", "--config", "c.json", "--seed", "4", "--verbose"])
        self.assertEqual((args.command, args.config, args.seed, args.verbose), ("bounds", "c.json", 4, True))
        with self.assertRaises(SystemExit):
            main.build_parser().parse_args(["plot", "--config", "c.json"])

    def test_output_dir_precedence(self):
        config = Path("configs/f1.json")
        self.assertEqual(main._output_dir(config, "a", "b"), Path("b"))
        self.assertEqual(main._output_dir(config, "a", None), Path("a"))
        self.assertEqual(main._output_dir(config, None, None).name, "f1")

    def test_missing_config(self):
        out = self.dir / "out"
        code = main.main(["bounds", "--config", str(self.dir / "absent.json"), "--output-dir", str(out)])
        self.assertEqual(code, main.EXIT_CONFIG)
        self.assertFalse(out.exists())

    def test_unknown_model(self):
        code = main.main(["fit", "--config", str(self._config(model="nope"))])
        self.assertEqual(code, main.EXIT_CONFIG)

    def test_input_count_mismatch(self):
        code = main.main(["fit", "--config", str(self._config(model="sdof"))])
        self.assertEqual(code, main.EXIT_CONFIG)

    def test_fit(self):
        out = self.dir / "out"
        code = main.main(["fit", "--config", str(self._config()), "--output-dir", str(out), "--seed", "0"])
        self.assertEqual(code, main.EXIT_OK)
        self.assertEqual(len(json.loads((out / "results.json").read_text())["index_set"]), 10)
        self.assertTrue((out / "run.log").exists())
        self.assertEqual(self.setup_logging.call_args.kwargs["log_level"], main.settings.LOG_LEVEL)

    def test_numerical_failure(self):
        with patch.object(SobolAnalysis, "run_fit", side_effect=RankDeficient("singular design")):
            code = main.main(["fit", "--config", str(self._config()), "--output-dir", str(self.dir / "out")])
        self.assertEqual(code, main.EXIT_NUMERICAL)

    def test_verbose_logging(self):
        with patch.dict(main.COMMANDS, {"fit": lambda *args, **kwargs: 0}):
            main.main(["fit", "--config", "unused.json", "--verbose"])
        self.assertEqual(self.setup_logging.call_args.kwargs["log_level"], "DEBUG")
