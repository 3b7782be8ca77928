"""
Tests for antenna gain patterns and descriptors.
"""

import unittest

import numpy as np

from src.antennas import (
    Directional,
    Mounting,
    Omni,
    TriSector,
    Upa,
    antenna_from_descriptor,
    antenna_to_descriptor,
    directivity_gain,
    tbs_gain_upper_bound,
    tri_sector_gain,
)
from src.utils.errors import ConfigError


def _direction(azimuth_deg, elevation_deg):
    az, el = np.radians(azimuth_deg), np.radians(elevation_deg)
    return np.array([np.cos(el) * np.cos(az), np.cos(el) * np.sin(az), np.sin(el)])


class TriSectorGainTest(unittest.TestCase):
    """Test cases for the 3GPP sector pattern."""

    def test_Boresight(self):
        self.assertAlmostEqual(tri_sector_gain(0.0, 3.0, 3.0, 17.7), 10 ** 1.77, places=9)

    def test_FullBeamwidthAzimuth(self):
        """12 dB attenuation at one full azimuth beamwidth."""
        self.assertAlmostEqual(tri_sector_gain(65.0, 0.0, 0.0, 17.7), 10 ** 0.57, places=9)

    def test_TotalAttenuationClamped(self):
        self.assertAlmostEqual(tri_sector_gain(180.0, 90.0, 0.0, 17.7), 10 ** -0.23, places=9)

    def test_NonIncreasingAwayFromPeak(self):
        offsets = np.linspace(0.0, 180.0, 50)
        gains = [tri_sector_gain(a, 0.0, 0.0, 17.7) for a in offsets]
        self.assertTrue(all(b <= a + 1e-12 for a, b in zip(gains, gains[1:])))
        gains = [tri_sector_gain(0.0, e, 2.0, 17.7) for e in 2.0 + offsets / 2.0]
        self.assertTrue(all(b <= a + 1e-12 for a, b in zip(gains, gains[1:])))


class DirectivityGainTest(unittest.TestCase):
    """Test cases for gains of every antenna variant."""

    def test_OmniIsIsotropic(self):
        for direction in ([1, 0, 0], [0, -1, 0.3], [0.2, 0.1, -5]):
            self.assertEqual(directivity_gain(Omni(), direction), 1.0)

    def test_DirectionalPeakAtTiltedBoresight(self):
        antenna = Directional(azimuth_deg=0.0, tilt_deg=3.0, boresight_gain_dbi=17.7)
        self.assertAlmostEqual(directivity_gain(antenna, _direction(0.0, 3.0)), 10 ** 1.77, places=6)
        self.assertLess(directivity_gain(antenna, _direction(10.0, 3.0)), 10 ** 1.77)

    def test_UpaElementAtBoresight(self):
        """The default 8 dBi element, seen along the array boresight."""
        self.assertAlmostEqual(directivity_gain(Upa(2, 2), [1.0, 0.0, 0.0]), 10 ** 0.8, places=9)

    def test_UpaGainFollowsMounting(self):
        belly = Upa(5, 5, mounting=Mounting(azimuth_deg=0.0, elevation_deg=-90.0))
        np.testing.assert_allclose(belly.mounting.boresight, [0.0, 0.0, -1.0], atol=1e-12)
        self.assertAlmostEqual(directivity_gain(belly, [0.0, 0.0, -1.0]), 10 ** 0.8, places=9)
        self.assertLess(directivity_gain(belly, [1.0, 0.0, 0.0]), 10 ** 0.8)

    def test_TriSectorTakesBestSector(self):
        antenna = TriSector(first_azimuth_deg=-90.0)
        rng = np.random.default_rng(5)
        for _ in range(50):
            direction = _direction(rng.uniform(-180, 180), rng.uniform(-10, 10))
            expected = max(sector.gain(direction) for sector in antenna.sectors)
            self.assertEqual(antenna.gain(direction), expected)

    def test_GainsStrictlyPositive(self):
        rng = np.random.default_rng(9)
        antennas = [Omni(-3.0), Directional(), TriSector(), Upa(3, 4)]
        for _ in range(100):
            direction = rng.normal(size=3)
            for antenna in antennas:
                self.assertGreater(directivity_gain(antenna, direction), 0.0)


class TbsGainUpperBoundTest(unittest.TestCase):
    """Test cases for the interference receive gain."""

    def test_ArrayUpperBound(self):
        self.assertAlmostEqual(tbs_gain_upper_bound(Upa(16, 16)), 256 * 10 ** 0.8, places=6)
        self.assertAlmostEqual(tbs_gain_upper_bound(Upa(16, 16)), 1615.25, places=1)

    def test_SingleOmni(self):
        self.assertEqual(tbs_gain_upper_bound(Omni()), 1.0)

    def test_OmniElementArray(self):
        self.assertEqual(tbs_gain_upper_bound(Upa(2, 2, element=Omni())), 4.0)

    def test_SingleAntennaUsesDirection(self):
        antenna = TriSector()
        direction = _direction(40.0, 1.0)
        self.assertAlmostEqual(tbs_gain_upper_bound(antenna, direction), antenna.gain(direction), places=9)
        self.assertEqual(tbs_gain_upper_bound(antenna), antenna.max_gain)


class AntennaDescriptorTest(unittest.TestCase):
    """Test cases for JSON antenna descriptors."""

    def test_UpaDefaultsToHalfWavelength(self):
        antenna = antenna_from_descriptor({"type": "upa", "rows": 4, "cols": 2}, wavelength=0.15)
        self.assertEqual(antenna.spacing_m, 0.075)
        self.assertEqual(antenna.n_elements, 8)

    def test_UpaWithoutWavelength(self):
        with self.assertRaises(ConfigError) as context:
            antenna_from_descriptor({"type": "upa", "rows": 4, "cols": 2}, path="antennas.plane")
        self.assertEqual(context.exception.issues[0][0], "antennas.plane.spacing_m")

    def test_DescriptorRoundTrip(self):
        antenna = Upa(3, 2, 0.01, element=Omni(2.0), mounting=Mounting(10.0, -20.0, 5.0))
        self.assertEqual(antenna_from_descriptor(antenna_to_descriptor(antenna)), antenna)

    def test_UnknownType(self):
        with self.assertRaises(ConfigError):
            antenna_from_descriptor({"type": "yagi"})

    def test_BadFieldsItemized(self):
        with self.assertRaises(ConfigError) as context:
            antenna_from_descriptor({"type": "directional", "tilt_deg": "low", "colour": 1}, path="abs")
        paths = sorted(path for path, _ in context.exception.issues)
        self.assertEqual(paths, ["abs.colour", "abs.tilt_deg"])


if __name__ == "__main__":
    unittest.main()
