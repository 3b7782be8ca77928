"""
Tests for array element geometry.
"""

import unittest

import numpy as np

from src.antennas import Mounting, Omni, SteeringContext, Upa, element_positions
from src.utils.errors import AntennaTypeError


class ElementPositionsTest(unittest.TestCase):
    """Test cases for UPA element offsets."""

    def test_SingleElement(self):
        np.testing.assert_array_equal(element_positions(Upa(1, 1)), np.zeros((1, 3)))

    def test_TwoByTwo(self):
        offsets = element_positions(Upa(2, 2, spacing_m=0.2))
        np.testing.assert_allclose(offsets[:, 0], 0.0)
        expected = {(-0.1, -0.1), (-0.1, 0.1), (0.1, -0.1), (0.1, 0.1)}
        self.assertEqual({(round(y, 9), round(z, 9)) for _, y, z in offsets}, expected)

    def test_HalfWavelengthSpan(self):
        upa = Upa.half_wavelength(5, 5, 299792458.0 / 2e9)
        offsets = element_positions(upa)
        self.assertEqual(len(offsets), 25)
        self.assertAlmostEqual(np.ptp(offsets[:, 1]), 0.299792458, places=9)
        self.assertAlmostEqual(np.ptp(offsets[:, 2]), 0.299792458, places=9)

    def test_CenteredAndPlanar(self):
        offsets = element_positions(Upa(4, 6, mounting=Mounting(30.0, -45.0, 10.0)))
        np.testing.assert_allclose(offsets.mean(axis=0), 0.0, atol=1e-12)
        normal = Mounting(30.0, -45.0, 10.0).boresight
        np.testing.assert_allclose(offsets @ normal, 0.0, atol=1e-12)

    def test_BellyMountRowsAlongX(self):
        offsets = element_positions(Upa(5, 1, spacing_m=1.0, mounting=Mounting(0.0, -90.0)))
        np.testing.assert_allclose(offsets[:, 2], 0.0, atol=1e-12)
        np.testing.assert_allclose(np.abs(offsets[:, 0]), [2.0, 1.0, 0.0, 1.0, 2.0], atol=1e-12)

    def test_NonArrayRejected(self):
        with self.assertRaises(AntennaTypeError):
            element_positions(Omni())


class SteeringContextTest(unittest.TestCase):
    """Test cases for exact element-to-element distances."""

    def test_DistanceShape(self):
        plane = SteeringContext.for_antenna(Upa(2, 3), 0.15)
        ground = SteeringContext.for_antenna(Omni(), 0.15)
        distances = plane.distances_to([1000.0, 0.0, 100.0], ground, [0.0, 0.0, 30.0])
        self.assertEqual(distances.shape, (1, 6))
        self.assertAlmostEqual(distances.mean(), np.hypot(1000.0, 70.0), places=3)

    def test_PhaseHasUnitModulus(self):
        context = SteeringContext(0.15, np.zeros((1, 3)))
        phase = context.phase(np.array([[0.075, 1234.5]]))
        np.testing.assert_allclose(np.abs(phase), 1.0)
        self.assertAlmostEqual(phase[0, 0], -1.0 + 0.0j)


if __name__ == "__main__":
    unittest.main()
