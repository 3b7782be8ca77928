"""
Concave surrogates min(a * snr^c + d, e_max) of the MCS step function.
"""

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from src.utils.errors import ConfigError

from .mcs import McsTable


@dataclass(frozen=True)
class Surrogate:
    a: float
    c: float
    d: float
    e_max: float = 6.88
    is_upper_bound: bool = False
    name: str = ""

    def __post_init__(self):
        if not self.a > 0 or not 0 < self.c < 1:
            raise ConfigError.single("surrogate", f"need a > 0 and 0 < c < 1, got a={self.a}, c={self.c}")

    def efficiency(self, snr):
        result = np.minimum(self.a * np.power(np.asarray(snr, dtype=float), self.c) + self.d, self.e_max)
        return float(result) if np.ndim(result) == 0 else result

    def with_cap(self, e_max: float) -> "Surrogate":
        return Surrogate(self.a, self.c, self.d, e_max, self.is_upper_bound, self.name)


UPPER_SURROGATE = Surrogate(1.9, 0.25, 0.3, is_upper_bound=True, name="upper")


def default_surrogates(e_max: float = 6.88) -> List[Surrogate]:
    """The four distinct surrogates used to search for feasible solutions."""
    return [
        Surrogate(1.9, 0.25, 0.3, e_max, True, "f1"),
        Surrogate(4.0476, 0.185, -2.4405, e_max, False, "f2"),
        Surrogate(0.93, 0.4, 0.3, e_max, False, "f3"),
        Surrogate(1.0, 0.37, 0.3, e_max, False, "f4"),
    ]


def surrogate_efficiency(snr, s: Surrogate):
    """min(a * snr^c + d, e_max) in bps/Hz."""
    return s.efficiency(snr)


def snr_cap(s: Surrogate, printed_form: bool = False) -> float:
    """
    Linear SNR at which the surrogate reaches e_max, ((e_max - d) / a)^(1/c).

    Args:
        s: Surrogate
        printed_form: Use (e_max + d) instead, for comparison runs only

    Returns:
        float: SNR cap (+inf for an uncapped surrogate)
    """
    if math.isinf(s.e_max):
        return math.inf
    numerator = s.e_max + s.d if printed_form else s.e_max - s.d
    if numerator <= 0:
        raise ConfigError.single("surrogate", f"e_max={s.e_max} must exceed d={s.d}")
    return (numerator / s.a) ** (1.0 / s.c)


def validate_upper_bound(s: Surrogate, table: McsTable, grid: Optional[np.ndarray] = None) -> bool:
    """
    Check that a surrogate dominates the step function.

    Args:
        s: Surrogate
        table: MCS table
        grid: SNR points; default covers [0, 10 * top threshold]

    Returns:
        bool: True if the surrogate is >= the table on the grid and at every threshold
    """
    if grid is None:
        top = 10.0 * table.top_threshold
        grid = np.concatenate([[0.0], np.logspace(-4, np.log10(top), 4000)])
    points = np.concatenate([np.asarray(grid, dtype=float), table.thresholds])
    return bool(np.all(s.efficiency(points) >= table.efficiency(points) - 1e-12))


def slot_rate(m: int, b: float, efficiency: float, bandwidth: Optional[float] = None) -> float:
    """
    Rate M * b * efficiency in bits/s.

    Args:
        m: Subchannel count (>= 1)
        b: Subchannel bandwidth in Hz
        efficiency: Spectral efficiency in bps/Hz
        bandwidth: Total band B; occupied bandwidth is capped at it when given

    Returns:
        float: Rate in bits/s
    """
    if m < 1:
        raise ValueError(f"subchannel count must be >= 1, got {m}")
    occupied = m * b if bandwidth is None else min(m * b, bandwidth)
    return occupied * efficiency
