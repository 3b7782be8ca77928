"""
Tests for the descent trajectory and the slot grid.
"""

import math
import unittest

import numpy as np

from src.geometry import DescentTrajectory, SlotGrid, plane_position
from src.utils.errors import ConfigError


class DescentTrajectoryTest(unittest.TestCase):
    """Test cases for plane positions along the glide path."""

    def setUp(self):
        self.traj = DescentTrajectory()

    def test_TouchdownIsOrigin(self):
        np.testing.assert_array_equal(plane_position(0.0, self.traj), [0.0, 0.0, 0.0])

    def test_WindowStartPosition(self):
        """tau = 300 s at 12.7 m/s and 3 degrees."""
        position = plane_position(300.0, self.traj)
        self.assertAlmostEqual(position[2], 3810.0)
        self.assertAlmostEqual(position[0], 3810.0 / math.tan(math.radians(3.0)))
        self.assertEqual(position[1], 0.0)

    def test_TenSecondsOut(self):
        position = plane_position(10.0, self.traj)
        self.assertAlmostEqual(position[2], 127.0)
        self.assertAlmostEqual(position[0], 2423.3, delta=0.5)

    def test_AltitudeCappedAtCruise(self):
        self.assertEqual(self.traj.altitude(10_000.0), 12000.0)
        np.testing.assert_allclose(self.traj.position(10_000.0), self.traj.top_of_descent)

    def test_NegativeTauRejected(self):
        with self.assertRaises(ValueError):
            plane_position(-1.0, self.traj)

    def test_InvalidTrajectory(self):
        with self.assertRaises(ConfigError) as context:
            DescentTrajectory(pitch_angle_deg=0.0, vertical_velocity=5.0)
        paths = [path for path, _ in context.exception.issues]
        self.assertIn("trajectory.pitch_angle_deg", paths)
        self.assertIn("trajectory.vertical_velocity", paths)


class SlotGridTest(unittest.TestCase):
    """Test cases for the decimated evaluation schedule."""

    def test_DefaultSchedule(self):
        """270 coarse slots before the last 30 s, 300 refined slots inside it."""
        slots = SlotGrid().evaluated_slots()
        self.assertEqual(len(slots), 570)
        self.assertAlmostEqual(slots[0].tau_start, 300.0)
        self.assertAlmostEqual(slots[0].duration, 1.0)
        self.assertAlmostEqual(slots[-1].duration, 0.1)
        self.assertEqual(slots[-1].end, 0)

    def test_SlotsTileTheWindow(self):
        slots = SlotGrid(transmission_window=45.0, decimation=700, refine_window=12.0, refine_factor=7).evaluated_slots()
        self.assertEqual(sum(slot.physical_slots for slot in slots), 45000)
        for previous, current in zip(slots, slots[1:]):
            self.assertEqual(previous.end, current.start)
            self.assertEqual(current.index, previous.index + 1)

    def test_CoarseSlotCutAtRefinementBoundary(self):
        slots = SlotGrid(transmission_window=1.5, decimation=1000, refine_window=0.7, refine_factor=10).evaluated_slots()
        self.assertEqual(len(slots), 8)
        self.assertEqual((slots[0].start, slots[0].end), (1500, 700))
        self.assertTrue(all(slot.physical_slots == 100 for slot in slots[1:]))

    def test_ZeroWindowHasNoSlots(self):
        self.assertEqual(SlotGrid(transmission_window=0.0).evaluated_slots(), [])

    def test_DecimationOfOneIsPointwise(self):
        slots = SlotGrid(transmission_window=0.005, decimation=1, refine_window=0.0).evaluated_slots()
        self.assertEqual(len(slots), 5)
        self.assertTrue(all(slot.physical_slots == 1 for slot in slots))

    def test_WindowMustBeWholeSlots(self):
        with self.assertRaises(ConfigError) as context:
            SlotGrid(transmission_window=1.0005)
        self.assertEqual(context.exception.issues[0][0], "ts_s")


if __name__ == "__main__":
    unittest.main()
