"""
Per-slot optimization problem and solution types.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from src.channel.synthesis import ChannelSnapshot
from src.linkrate.mcs import McsTable, ShannonRate
from src.linkrate.surrogate import UPPER_SURROGATE, Surrogate, default_surrogates
from src.utils.errors import ConfigError


class Method(Enum):
    CLOSED_FORM = "ClosedForm"
    RANK_ONE_DIRECT = "RankOneDirect"
    NEIGHBOR_SCALED = "NeighborScaled"
    RANDOMIZATION = "Randomization"


# lower value wins a rate tie
METHOD_PRIORITY = {
    Method.CLOSED_FORM: 0,
    Method.RANK_ONE_DIRECT: 0,
    Method.NEIGHBOR_SCALED: 1,
    Method.RANDOMIZATION: 2,
}


@dataclass(frozen=True)
class SolverSettings:
    backend: str = "admm"
    tol: float = 1e-6
    search_tol: float = 1e-4  # solver tolerance while bracketing the subchannel count
    max_iter: int = 50000
    rank_tol: float = 1e-6
    n_trials: int = 100
    frontier_rescale: bool = True
    printed_l3: bool = False
    exhaustive_m: bool = False
    full_bandwidth: bool = False
    refine_limit: int = 16
    record_history: bool = False


@dataclass
class SlotProblem:
    snapshot: ChannelSnapshot
    scenario: int
    n_sub: int
    b: float
    noise_psd: float  # sigma^2 in W/Hz
    p_max: float
    p_ant: float
    delta: float  # per-subchannel interference cap in W, may be inf
    mcs: Union[McsTable, ShannonRate]
    surrogates: List[Surrogate] = field(default_factory=default_surrogates)
    upper_surrogate: Surrogate = UPPER_SURROGATE
    bandwidth: Optional[float] = None
    settings: SolverSettings = field(default_factory=SolverSettings)
    seed: int = 0

    def __post_init__(self):
        issues = []
        if self.scenario not in (1, 2, 3, 4):
            issues.append(("scenario", f"must be 1, 2, 3 or 4, got {self.scenario}"))
        if self.n_sub < 1:
            issues.append(("n_sub", "must be at least 1"))
        for name in ("b", "noise_psd", "p_max", "p_ant", "delta"):
            if not getattr(self, name) > 0:
                issues.append((name, "must be strictly positive"))
        if issues:
            raise ConfigError(issues)

    @property
    def shannon(self) -> bool:
        return isinstance(self.mcs, ShannonRate)

    @property
    def n_plane(self) -> int:
        return self.snapshot.n_plane

    @cached_property
    def receive_vector(self) -> np.ndarray:
        return self.snapshot.u_A / np.linalg.norm(self.snapshot.u_A)

    @cached_property
    def effective_vector(self) -> np.ndarray:
        """a = H0^H v, so that v^H H0 w = a^H w."""
        return self.snapshot.H0.conj().T @ self.receive_vector

    @cached_property
    def objective_matrix(self) -> np.ndarray:
        """C = H0^H u_A u_A^H H0 / N_A."""
        a = self.effective_vector
        return np.outer(a, a.conj())

    def noise(self, m: int) -> float:
        return m * self.b * self.noise_psd

    def occupied(self, m: int) -> float:
        return m * self.b if self.bandwidth is None else min(m * self.b, self.bandwidth)

    def rate(self, m: int, snr):
        return self.occupied(m) * self.mcs.efficiency(snr)

    def snr(self, m: int, w: np.ndarray) -> float:
        return float(abs(np.vdot(self.effective_vector, w)) ** 2 / self.noise(m))

    def m_candidates(self) -> List[int]:
        if self.settings.full_bandwidth:
            return [self.n_sub]
        return list(range(1, self.n_sub + 1))


@dataclass
class SlotSolution:
    m_star: int
    w: np.ndarray
    v_tilde: np.ndarray
    rate_bps: float
    upper_bound_bps: float
    snr_linear: float
    interference_margin_db: float
    max_interference_w: float
    rank1: bool
    method: Method
    solver_status: str = "optimal"
    sdp_solves: int = 0
    max_iter_hits: int = 0
    # (m, surrogate key) -> [(iteration, primal, dual, gap, rho), ...]
    residuals: Dict[Tuple[int, str], List[Tuple[int, float, float, float, float]]] = field(default_factory=dict)

    @property
    def tx_power_w(self) -> float:
        return float(np.real(np.vdot(self.w, self.w)))

    @property
    def snr_db(self) -> float:
        return 10.0 * math.log10(self.snr_linear) if self.snr_linear > 0 else -math.inf
