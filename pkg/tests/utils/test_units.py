"""
Tests for unit conversions and the error hierarchy.
"""

import math
import unittest

import numpy as np

from src.utils.errors import ConfigError, DescentLinkError, OutputPathError, SdpInputError
from src.utils.units import (
    BITS_PER_GB,
    bits_to_gb,
    db_to_linear,
    dbm_to_watts,
    linear_to_db,
    watts_to_dbm,
    wavelength,
)


class UnitsTest(unittest.TestCase):
    """Test cases for dB/linear conversions."""

    def test_DbToLinearScalar(self):
        """Scalars come back as plain floats."""
        value = db_to_linear(3.0)
        self.assertIsInstance(value, float)
        self.assertAlmostEqual(value, 1.9952623149688795)

    def test_DbToLinearArray(self):
        values = db_to_linear(np.array([0.0, 10.0, 20.0]))
        np.testing.assert_allclose(values, [1.0, 10.0, 100.0])

    def test_LinearToDbZero(self):
        self.assertEqual(linear_to_db(0.0), -math.inf)
        self.assertAlmostEqual(linear_to_db(100.0), 20.0)

    def test_DbmToWatts(self):
        """-100 dBm is 1e-13 W, +inf stays +inf."""
        self.assertAlmostEqual(dbm_to_watts(-100.0) / 1e-13, 1.0, places=12)
        self.assertAlmostEqual(dbm_to_watts(30.0), 1.0)
        self.assertEqual(dbm_to_watts(math.inf), math.inf)

    def test_WattsToDbm(self):
        self.assertAlmostEqual(watts_to_dbm(1.0), 30.0)
        self.assertEqual(watts_to_dbm(0.0), -math.inf)
        self.assertEqual(watts_to_dbm(math.inf), math.inf)

    def test_Wavelength(self):
        self.assertAlmostEqual(wavelength(2000.0), 0.149896229, places=8)
        self.assertAlmostEqual(wavelength(28000.0), 0.0107068735, places=9)

    def test_BitsToGb(self):
        self.assertEqual(BITS_PER_GB, 8e9)
        self.assertAlmostEqual(bits_to_gb(20e6 * 300 * 6.88), 5.16)


class ErrorsTest(unittest.TestCase):
    """Test cases for the exception hierarchy."""

    def test_ConfigErrorCollectsIssues(self):
        error = ConfigError([("ts_s", "must be non-negative"), ("delta", "bad unit")])
        self.assertEqual(len(error.issues), 2)
        self.assertIn("ts_s: must be non-negative", str(error))
        self.assertIn("delta: bad unit", str(error))

    def test_ConfigErrorSingle(self):
        error = ConfigError.single("layout.file", "file not found")
        self.assertEqual(error.issues, [("layout.file", "file not found")])
        self.assertIsInstance(error, DescentLinkError)

    def test_StdlibCompatibleBases(self):
        self.assertTrue(issubclass(SdpInputError, ValueError))
        self.assertTrue(issubclass(OutputPathError, OSError))


if __name__ == "__main__":
    unittest.main()
