"""
Tests for the path-loss model and band presets.
"""

import math
import unittest

from src.channel import BAND_PRESETS, MICROWAVE, MMWAVE, path_gain, path_loss_db


class PathLossTest(unittest.TestCase):
    """Test cases for path_loss_db."""

    def test_ClampDistance(self):
        self.assertAlmostEqual(path_loss_db(75.0, 2000.0, 0.01), 32.5 + 20 * math.log10(150.0) + 0.00075)
        self.assertAlmostEqual(path_loss_db(75.0, 2000.0, 0.01), 76.02, places=2)

    def test_BelowClamp(self):
        """Only the atmospheric term still sees the true distance."""
        self.assertAlmostEqual(path_loss_db(50.0, 2000.0, 0.01), 32.5 + 20 * math.log10(150.0) + 0.0005)

    def test_MillimeterWave(self):
        self.assertAlmostEqual(path_loss_db(10_000.0, 28_000.0, 0.1), 142.44, places=2)

    def test_MonotoneInDistance(self):
        losses = [path_loss_db(d, 2000.0, 0.01) for d in (75.0, 100.0, 1000.0, 50_000.0)]
        self.assertEqual(losses, sorted(losses))

    def test_PathGainIsInverse(self):
        self.assertAlmostEqual(10 * math.log10(path_gain(2000.0, 2000.0, 0.01)), -path_loss_db(2000.0, 2000.0, 0.01))

    def test_InvalidInputs(self):
        for args in ((0.0, 2000.0, 0.01), (100.0, -1.0, 0.01), (100.0, 2000.0, -0.1)):
            with self.assertRaises(ValueError):
                path_loss_db(*args)


class BandTest(unittest.TestCase):
    """Test cases for the band presets."""

    def test_Presets(self):
        self.assertEqual(BAND_PRESETS["microwave"], MICROWAVE)
        self.assertEqual((MICROWAVE.bandwidth_hz, MICROWAVE.n_subchannels), (20e6, 112))
        self.assertEqual((MMWAVE.bandwidth_hz, MMWAVE.n_subchannels), (1e9, 5556))
        self.assertEqual(MICROWAVE.subchannel_bandwidth_hz, 180e3)

    def test_Wavelength(self):
        self.assertAlmostEqual(MICROWAVE.wavelength, 0.149896229, places=9)


if __name__ == "__main__":
    unittest.main()
