"""
Descent trajectory and slot grid.

Time is expressed as time-until-touchdown tau (seconds): tau = T_s at the start
of the transmission window and tau = 0 at touchdown. The touchdown point is the
coordinate origin and the plane approaches along the +x axis.
"""

import math
from dataclasses import dataclass
from typing import List

import numpy as np

from src.utils.errors import ConfigError


@dataclass(frozen=True)
class DescentTrajectory:
    """Straight descent at constant vertical velocity toward the origin."""

    pitch_angle_deg: float = 3.0
    vertical_velocity: float = -12.7  # m/s, negative while descending
    runway_length: float = 4000.0
    cruising_altitude: float = 12000.0

    def __post_init__(self):
        issues = []
        if not 0.0 < self.pitch_angle_deg < 90.0:
            issues.append(("trajectory.pitch_angle_deg", "must lie in (0, 90) degrees"))
        if not self.vertical_velocity < 0.0:
            issues.append(("trajectory.vertical_velocity", "must be negative (descending)"))
        if not self.runway_length > 0.0:
            issues.append(("trajectory.runway_length", "must be positive"))
        if not self.cruising_altitude > 0.0:
            issues.append(("trajectory.cruising_altitude", "must be positive"))
        if issues:
            raise ConfigError(issues)

    def altitude(self, tau: float) -> float:
        """Altitude z(tau) = |v_y| * tau, capped at the cruising altitude."""
        return min(abs(self.vertical_velocity) * tau, self.cruising_altitude)

    def position(self, tau: float) -> np.ndarray:
        """Plane position at time-until-touchdown tau."""
        z = self.altitude(tau)
        return np.array([z / math.tan(math.radians(self.pitch_angle_deg)), 0.0, z])

    @property
    def top_of_descent(self) -> np.ndarray:
        """Point D where the plane leaves its cruising altitude."""
        z = self.cruising_altitude
        return np.array([z / math.tan(math.radians(self.pitch_angle_deg)), 0.0, z])


def plane_position(tau: float, traj: DescentTrajectory) -> np.ndarray:
    """
    Position of the plane at a given time until touchdown.

    Args:
        tau: Seconds until touchdown (>= 0)
        traj: Descent trajectory

    Returns:
        np.ndarray: (x, 0, z) in meters
    """
    if tau < 0:
        raise ValueError(f"time until touchdown must be non-negative, got {tau}")
    return traj.position(tau)


@dataclass(frozen=True)
class EvaluatedSlot:
    """
    One evaluated slot standing for a run of consecutive physical slots.

    Counts are in physical slots until touchdown so that accumulated durations
    stay exact integers.
    """

    index: int
    start: int  # physical slots until touchdown at the slot's earliest instant
    end: int  # physical slots until touchdown at the slot's latest instant
    slot_duration: float

    @property
    def tau_start(self) -> float:
        return self.start * self.slot_duration

    @property
    def tau_end(self) -> float:
        return self.end * self.slot_duration

    @property
    def physical_slots(self) -> int:
        return self.start - self.end

    @property
    def duration(self) -> float:
        return self.physical_slots * self.slot_duration


@dataclass(frozen=True)
class SlotGrid:
    """
    Physical slot grid and its decimated evaluation schedule.

    Within the final `refine_window` seconds the decimation factor is divided
    by `refine_factor`, since rates change fastest close to the ABS.
    """

    slot_duration: float = 1e-3
    transmission_window: float = 300.0
    decimation: int = 1000
    refine_window: float = 30.0
    refine_factor: int = 10

    def __post_init__(self):
        issues = []
        if not self.slot_duration > 0:
            issues.append(("slot_duration_s", "must be positive"))
        if self.transmission_window < 0:
            issues.append(("ts_s", "must be non-negative"))
        if int(self.decimation) != self.decimation or self.decimation < 1:
            issues.append(("decimation", "must be a positive integer"))
        if int(self.refine_factor) != self.refine_factor or self.refine_factor < 1:
            issues.append(("refine_factor", "must be a positive integer"))
        if self.refine_window < 0:
            issues.append(("refine_window_s", "must be non-negative"))
        if self.slot_duration > 0 and self.transmission_window >= 0:
            ratio = self.transmission_window / self.slot_duration
            if abs(ratio - round(ratio)) > 1e-6 * max(1.0, ratio):
                issues.append(("ts_s", "must be a whole number of slot durations"))
        if issues:
            raise ConfigError(issues)

    @property
    def physical_slot_count(self) -> int:
        return int(round(self.transmission_window / self.slot_duration))

    @property
    def refined_decimation(self) -> int:
        return max(1, self.decimation // self.refine_factor)

    def evaluated_slots(self) -> List[EvaluatedSlot]:
        """
        Evaluated slots ordered from the start of the window toward touchdown.

        Returns:
            List[EvaluatedSlot]: Slots covering [0, T_s] without gaps or overlap
        """
        refine_start = int(round(self.refine_window / self.slot_duration))
        slots = []
        start = self.physical_slot_count
        while start > 0:
            stride = self.refined_decimation if start <= refine_start else self.decimation
            end = max(start - stride, 0)
            # do not let a coarse slot swallow the refinement boundary
            if start > refine_start > end:
                end = refine_start
            slots.append(EvaluatedSlot(len(slots), start, end, self.slot_duration))
            start = end
        return slots
