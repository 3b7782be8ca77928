"""
Tests for the command-line entry point.
"""

import json
import os
import shutil
import tempfile
import unittest

from src.main import EXIT_CONFIG, EXIT_IO, EXIT_OK, apply_overrides, build_parser, load_document, main
from src.utils.errors import ConfigError


class OverridesTest(unittest.TestCase):
    """Test cases for mapping flags onto the configuration document."""

    def _overrides(self, argv, document=None):
        return apply_overrides(document or {}, build_parser().parse_args(["plan"] + argv))

    def test_NoFlagsKeepsDocument(self):
        document = {"scenario": 2, "output": {"plots": True}}
        self.assertEqual(self._overrides([], document), document)

    def test_FlagsWin(self):
        document = self._overrides(["--scenario", "3", "--ts", "120", "--pmax", "40"], {"scenario": 1, "ts_s": 300})
        self.assertEqual(document["scenario"], 3)
        self.assertEqual(document["ts_s"], 120.0)
        self.assertEqual(document["p_max_w"], 40.0)

    def test_DeltaForms(self):
        self.assertEqual(self._overrides(["--delta", "-120"])["delta"], -120.0)
        self.assertEqual(self._overrides(["--delta", "inf"])["delta"], float("inf"))
        self.assertEqual(self._overrides(["--delta", "-120 dBm"])["delta"], "-120 dBm")

    def test_OutputFlags(self):
        document = self._overrides(["--out", "results/a", "--plots", "--dump-residuals"])
        self.assertEqual(document["output"], {"directory": "results/a", "plots": True, "dump_residuals": True})

    def test_SourceNotModified(self):
        source = {"output": {"plots": False}}
        self._overrides(["--plots"], source)
        self.assertEqual(source, {"output": {"plots": False}})

    def test_BooleanFlags(self):
        document = self._overrides(["--exhaustive-m", "--full-bandwidth", "--capacity-only"])
        self.assertTrue(document["exhaustive_m"])
        self.assertTrue(document["full_bandwidth"])
        self.assertTrue(document["capacity_only"])


class MainTest(unittest.TestCase):
    """Test cases for exit codes and written files."""

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.test_dir)

    def test_CapacityOnlyRun(self):
        out = os.path.join(self.test_dir, "out")
        self.assertEqual(main(["plan", "--capacity-only", "--out", out]), EXIT_OK)
        with open(os.path.join(out, "summary.json")) as f:
            summary = json.load(f)
        self.assertAlmostEqual(summary["v_cap"]["gb"], 5.16)
        self.assertEqual(summary["config"]["band"], "microwave")

    def test_ConfigFile(self):
        path = os.path.join(self.test_dir, "run.json")
        out = os.path.join(self.test_dir, "out")
        with open(path, "w") as f:
            json.dump({"band": "mmwave", "capacity_only": True, "output": {"directory": out}}, f)
        self.assertEqual(main(["plan", "--config", path]), EXIT_OK)
        with open(os.path.join(out, "summary.json")) as f:
            self.assertEqual(json.load(f)["config"]["band"], "mmwave")

    def test_MissingConfigFile(self):
        self.assertEqual(main(["plan", "--config", os.path.join(self.test_dir, "absent.json")]), EXIT_CONFIG)

    def test_InvalidJson(self):
        path = os.path.join(self.test_dir, "bad.json")
        with open(path, "w") as f:
            f.write("{not json")
        with self.assertRaises(ConfigError):
            load_document(path)
        self.assertEqual(main(["plan", "--config", path]), EXIT_CONFIG)

    def test_DeltaInWatts(self):
        out = os.path.join(self.test_dir, "out")
        self.assertEqual(main(["plan", "--capacity-only", "--delta", "-100 W", "--out", out]), EXIT_CONFIG)
        self.assertFalse(os.path.exists(out))

    def test_UnwritableOutput(self):
        blocker = os.path.join(self.test_dir, "file")
        with open(blocker, "w") as f:
            f.write("x")
        self.assertEqual(main(["plan", "--capacity-only", "--out", os.path.join(blocker, "out")]), EXIT_IO)

    def test_BadScenarioFlag(self):
        with self.assertRaises(SystemExit):
            main(["plan", "--scenario", "9"])

    def test_LogFile(self):
        log_file = os.path.join(self.test_dir, "logs", "run.log")
        out = os.path.join(self.test_dir, "out")
        self.assertEqual(main(["--log-file", log_file, "plan", "--capacity-only", "--out", out]), EXIT_OK)
        self.assertTrue(os.path.exists(log_file))


if __name__ == "__main__":
    unittest.main()
