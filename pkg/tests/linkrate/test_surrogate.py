"""
Tests for concave surrogates, SNR caps and slot rates.
"""

import math
import unittest

import numpy as np
from scipy.optimize import brentq

from src.linkrate import (
    LTE_A_TABLE,
    UPPER_SURROGATE,
    Surrogate,
    default_surrogates,
    mcs_efficiency,
    slot_rate,
    snr_cap,
    surrogate_efficiency,
    validate_upper_bound,
)
from src.utils.errors import ConfigError


class SurrogateTest(unittest.TestCase):
    """Test cases for the concave efficiency approximations."""

    def test_UnitSnr(self):
        self.assertAlmostEqual(surrogate_efficiency(1.0, UPPER_SURROGATE), 2.2)

    def test_ZeroSnr(self):
        self.assertAlmostEqual(surrogate_efficiency(0.0, UPPER_SURROGATE), 0.3)

    def test_Capped(self):
        self.assertEqual(surrogate_efficiency(1e6, UPPER_SURROGATE), 6.88)

    def test_DefaultSet(self):
        surrogates = default_surrogates()
        self.assertEqual([s.name for s in surrogates], ["f1", "f2", "f3", "f4"])
        self.assertEqual(sum(s.is_upper_bound for s in surrogates), 1)
        self.assertTrue(all(s.e_max == 6.88 for s in surrogates))

    def test_InvalidExponent(self):
        with self.assertRaises(ConfigError):
            Surrogate(1.0, 1.5, 0.0)


class UpperBoundValidationTest(unittest.TestCase):
    """Test cases for surrogate dominance over the step function."""

    def test_UpperSurrogateDominates(self):
        self.assertTrue(validate_upper_bound(UPPER_SURROGATE, LTE_A_TABLE))
        grid = np.logspace(-3, 4, 20000)
        self.assertTrue(np.all(surrogate_efficiency(grid, UPPER_SURROGATE) >= mcs_efficiency(grid, LTE_A_TABLE)))

    def test_SearchSurrogateDoesNotDominate(self):
        """0.93 g^0.4 + 0.3 falls below the 7.2 dB level."""
        self.assertFalse(validate_upper_bound(default_surrogates()[2], LTE_A_TABLE))


class SnrCapTest(unittest.TestCase):
    """Test cases for the SNR at which a surrogate saturates."""

    def test_UpperSurrogateCap(self):
        cap = snr_cap(UPPER_SURROGATE)
        self.assertAlmostEqual(cap, (6.58 / 1.9) ** 4)
        self.assertAlmostEqual(surrogate_efficiency(cap * (1 - 1e-9), UPPER_SURROGATE), 6.88, places=6)

    def test_UnitCap(self):
        self.assertAlmostEqual(snr_cap(Surrogate(6.58, 0.3, 0.3, 6.88)), 1.0)

    def test_NegativeOffsetCap(self):
        s = Surrogate(4.0476, 0.185, -2.4405, 6.88)
        root = brentq(lambda g: s.a * g ** s.c + s.d - s.e_max, 1e-6, 1e6, xtol=1e-12)
        self.assertAlmostEqual(snr_cap(s) / root, 1.0, places=8)

    def test_PrintedForm(self):
        self.assertAlmostEqual(snr_cap(UPPER_SURROGATE, printed_form=True), (7.18 / 1.9) ** 4)

    def test_CapBelowOffset(self):
        with self.assertRaises(ConfigError):
            snr_cap(Surrogate(1.0, 0.5, 7.0, 6.88))

    def test_ShannonUncapped(self):
        self.assertEqual(snr_cap(UPPER_SURROGATE.with_cap(math.inf)), math.inf)


class SlotRateTest(unittest.TestCase):
    """Test cases for M * b * f."""

    def test_Product(self):
        self.assertAlmostEqual(slot_rate(111, 180e3, 6.88) / 1e6, 137.4624)

    def test_ZeroEfficiency(self):
        self.assertEqual(slot_rate(5, 180e3, 0.0), 0.0)

    def test_MillimeterWaveCappedAtBand(self):
        self.assertAlmostEqual(slot_rate(5556, 180e3, 6.88) / 1e9, 6.8805504)
        self.assertAlmostEqual(slot_rate(5556, 180e3, 6.88, bandwidth=1e9) / 1e9, 6.88)

    def test_NeedsOneSubchannel(self):
        with self.assertRaises(ValueError):
            slot_rate(0, 180e3, 1.0)


if __name__ == "__main__":
    unittest.main()
