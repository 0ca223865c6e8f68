import json
import tempfile
from pathlib import Path
from unittest import TestCase

from core.analysis_config import AnalysisConfig, load_analysis_config
from core.config import settings
from core.exceptions import ConfigError
from tools.augmented.types import PhantomMode
from tools.pce.types import SelectionMethod

CONFIGS = Path(__file__).resolve().parents[2] / "configs"

MINIMAL = {
    "model": "f1",
    "inputs": [
        {"name": "x1", "family": "gaussian", "params": {"mean": [-1.0, 1.0], "std": [0.5, 1.0]}},
        {"name": "x2", "family": "gaussian", "params": {"mean": 0.0, "std": 1.0}},
    ],
    "design": {"N": 20},
}


class TestAnalysisConfig(TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, payload) -> Path:
        path = self.dir / "config.json"
        text = payload if isinstance(payload, str) else json.dumps(payload)
        path.write_text(text, encoding="utf-8")
        return path

    def test_bundled_configs_are_valid(self):
        for name, n_inputs in (("f1.json", 2), ("sdof.json", 6), ("truss.json", 7)):
            config = load_analysis_config(CONFIGS / name)
            self.assertEqual(len(config.inputs), n_inputs)
            self.assertEqual(len(config.pboxes()), n_inputs)

    def test_defaults(self):
        config = load_analysis_config(self.write(MINIMAL))
        self.assertEqual(config.design.n_ph, 10)
        self.assertEqual(config.design.phantom_mode, PhantomMode.JOINT)
        self.assertEqual(config.pce.selection, SelectionMethod.LARS)
        self.assertIsNone(config.validation)
        self.assertEqual(config.outputs.formats, ["json", "csv"])
        self.assertEqual(config.pboxes()[1].box.epistemic, ())

    def test_validation_defaults_to_the_configured_sample_size(self):
        config = load_analysis_config(self.write({**MINIMAL, "validation": {}}))
        self.assertEqual(config.validation.n, settings.VALIDATION_SAMPLES)

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            load_analysis_config(self.dir / "absent.json")

    def test_malformed_json(self):
        with self.assertRaises(ConfigError):
            load_analysis_config(self.write("{not json"))

    def test_unknown_keys_are_rejected(self):
        with self.assertRaises(ConfigError):
            load_analysis_config(self.write({**MINIMAL, "colour": "blue"}))

    def test_interval_needs_two_values(self):
        payload = json.loads(json.dumps(MINIMAL))
        payload["inputs"][0]["params"]["mean"] = [0.0, 1.0, 2.0]
        with self.assertRaises(ConfigError):
            load_analysis_config(self.write(payload))

    def test_invalid_pbox(self):
        payload = json.loads(json.dumps(MINIMAL))
        payload["inputs"][0]["params"]["std"] = [-1.0, 1.0]
        with self.assertRaises(ConfigError):
            load_analysis_config(self.write(payload))

    def test_duplicate_input_names(self):
        payload = json.loads(json.dumps(MINIMAL))
        payload["inputs"][1]["name"] = "x1"
        with self.assertRaises(ConfigError):
            load_analysis_config(self.write(payload))

    def test_with_seed_replaces_design_and_optimizer_seeds(self):
        config = AnalysisConfig.model_validate(MINIMAL).with_seed(7)
        self.assertEqual(config.design.seed, 7)
        self.assertEqual(config.optimizer.seed, 7)
        self.assertEqual(config.optimizer.to_config().seed, 7)
