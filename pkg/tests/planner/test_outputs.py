"""
Tests for result files and volume accounting.
"""

import csv
import json
import math
import os
import shutil
import tempfile
import unittest
from pathlib import Path

import numpy as np

from src.geometry import EvaluatedSlot
from src.optimizer import Method
from src.optimizer.problem import SlotSolution
from src.planner import CSV_HEADER, RunStats, RunSummary, SlotRecord, parse_config, prepare_output_dir
from src.planner.outputs import emit_outputs, plot_results, slot_rows, write_residuals_csv
from src.utils.errors import OutputPathError


def _solution(rate: float, upper: float, m: int = 4, residuals=None) -> SlotSolution:
    return SlotSolution(
        m_star=m,
        w=np.array([0.5, 0.5j]),
        v_tilde=np.array([1.0]),
        rate_bps=rate,
        upper_bound_bps=upper,
        snr_linear=100.0,
        interference_margin_db=3.0,
        max_interference_w=1e-13,
        rank1=True,
        method=Method.RANK_ONE_DIRECT,
        residuals=residuals or {},
    )


def _summary(config) -> RunSummary:
    records = [
        SlotRecord(EvaluatedSlot(0, 3000, 2000, 1e-3), _solution(2e6, 3e6)),
        SlotRecord(EvaluatedSlot(1, 2000, 1000, 1e-3), _solution(4e6, 5e6, residuals={(4, "f1"): [(10, 1e-3, 2e-3, 0.1, 1.0)]})),
        SlotRecord(EvaluatedSlot(2, 1000, 0, 1e-3), _solution(6e6, 6e6)),
    ]
    return RunSummary(
        v_data_bits=sum(r.bits for r in records),
        v_upper_bits=sum(r.upper_bits for r in records),
        v_cap_bits=config.capacity_bits,
        records=records,
        config=config.document,
        seed=config.seed,
        stats=RunStats(slots=3),
    )


class SlotRecordTest(unittest.TestCase):
    def test_VolumeOfRecord(self):
        record = SlotRecord(EvaluatedSlot(0, 3000, 2000, 1e-3), _solution(2e6, 3e6))
        self.assertAlmostEqual(record.bits, 2e6)
        self.assertAlmostEqual(record.upper_bits, 3e6)
        self.assertAlmostEqual(record.tau_s, 3.0)
        self.assertAlmostEqual(record.max_interference_dbm, -100.0)


class RunSummaryTest(unittest.TestCase):
    """Test cases for the summary document and cumulative curves."""

    def setUp(self):
        self.config = parse_config({"ts_s": 3})
        self.summary = _summary(self.config)

    def test_CumulativeCurvesFromTouchdown(self):
        windows, data, upper = self.summary.cumulative_curves()
        np.testing.assert_allclose(windows, [0.0, 1.0, 2.0, 3.0])
        np.testing.assert_allclose(data, [0.0, 6e6, 10e6, 12e6])
        np.testing.assert_allclose(upper, [0.0, 6e6, 11e6, 14e6])
        self.assertTrue(np.all(np.diff(data) >= 0))

    def test_Document(self):
        document = self.summary.to_document()
        self.assertAlmostEqual(document["v_data"]["bits"], 12e6)
        self.assertAlmostEqual(document["v_data"]["bytes"], 1.5e6)
        self.assertAlmostEqual(document["v_data"]["gb"], 12e6 / 8e9)
        self.assertEqual(document["seed"], 0)
        self.assertEqual(document["stats"]["slots"], 3)

    def test_InfiniteCapacityDocument(self):
        summary = RunSummary(0.0, 0.0, math.inf, [], {}, 0)
        self.assertEqual(summary.to_document()["v_cap"], {"bits": "inf", "bytes": "inf", "gb": "inf"})


class OutputFilesTest(unittest.TestCase):
    """Test cases for emit_outputs."""

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.test_dir)

    def _config(self, **output):
        output.setdefault("directory", self.test_dir)
        return parse_config({"ts_s": 3, "output": output})

    def test_CsvRows(self):
        config = self._config()
        summary = _summary(config)
        files = emit_outputs(summary, config)
        with open(files["slots"], newline="") as f:
            rows = list(csv.reader(f))
        self.assertEqual(rows[0], CSV_HEADER)
        self.assertEqual(len(rows), 4)
        self.assertEqual(rows[1][0], "3.0")
        self.assertEqual(rows[1][1], "4")
        self.assertEqual(rows[1][7], "true")
        self.assertEqual(rows[1][8], "RankOneDirect")
        self.assertAlmostEqual(float(rows[1][4]), 20.0)
        self.assertAlmostEqual(float(rows[1][5]), 0.5)

    def test_CsvSumMatchesSummary(self):
        config = self._config()
        summary = _summary(config)
        files = emit_outputs(summary, config)
        with open(files["slots"], newline="") as f:
            rates = [float(row["rate_bps"]) for row in csv.DictReader(f)]
        volume = sum(rate * record.slot.duration for rate, record in zip(rates, summary.records))
        with open(files["summary"]) as f:
            document = json.load(f)
        self.assertLessEqual(abs(volume - document["v_data"]["bits"]), 1.0)

    def test_ZeroSlotRun(self):
        config = self._config()
        summary = RunSummary(0.0, 0.0, 0.0, [], config.document, 0)
        files = emit_outputs(summary, config)
        with open(files["slots"]) as f:
            self.assertEqual(f.read(), ",".join(CSV_HEADER) + "\n")

    def test_OptionalDumps(self):
        config = self._config(dump_residuals=True, dump_channels=True)
        files = emit_outputs(_summary(config), config)
        self.assertIn("residuals", files)
        with open(files["residuals"], newline="") as f:
            rows = list(csv.reader(f))
        self.assertEqual(rows[0][:4], ["slot_index", "tau_s", "m", "surrogate"])
        self.assertEqual(rows[1][:5], ["1", "2.0", "4", "f1", "10"])
        with open(files["channels"]) as f:
            self.assertEqual(json.load(f), [])

    def test_ResidualsWithoutHistory(self):
        config = self._config()
        summary = RunSummary(0.0, 0.0, 0.0, [SlotRecord(EvaluatedSlot(0, 1, 0, 1e-3), _solution(1.0, 1.0))], {}, 0)
        path = Path(self.test_dir) / "r.csv"
        write_residuals_csv(summary, path)
        self.assertEqual(len(path.read_text().splitlines()), 1)

    def test_Plots(self):
        config = self._config(plots=True)
        files = emit_outputs(_summary(config), config)
        self.assertTrue(os.path.exists(files["volume_plot"]))
        self.assertTrue(os.path.exists(files["slots_plot"]))

    def test_PlotsOfEmptyRun(self):
        written = plot_results(RunSummary(0.0, 0.0, 0.0, [], {}, 0), Path(self.test_dir), "svg")
        self.assertEqual([p.suffix for p in written], [".svg", ".svg"])

    def test_RowsFollowRunOrder(self):
        rows = slot_rows(_summary(self._config()))
        self.assertEqual([row[0] for row in rows], ["3.0", "2.0", "1.0"])

    def test_UnwritableDirectory(self):
        blocker = os.path.join(self.test_dir, "file")
        with open(blocker, "w") as f:
            f.write("x")
        with self.assertRaises(OutputPathError):
            prepare_output_dir(os.path.join(blocker, "sub"))

    def test_OutputPathErrorIsOSError(self):
        self.assertTrue(issubclass(OutputPathError, OSError))


if __name__ == "__main__":
    unittest.main()
