"""
Exact solution for single-antenna planes (scenarios 1 and 2).

With one transmit antenna the beamvector is a scalar power. For a fixed M
the rate is increasing in power, so the best power is the largest one the
interference caps allow, and a linear sweep over M is exact.
"""

import logging
import math

import numpy as np

from .problem import Method, SlotProblem, SlotSolution
from .snr import interference_check, receive_bf

logger = logging.getLogger(__name__)


def scenario1_power(p: SlotProblem, m) -> np.ndarray:
    """Q*(M) = min(M delta / max_i |h_i|^2, P_max, P_ant)."""
    m = np.asarray(m, dtype=float)
    budget = min(p.p_max, p.p_ant)
    gains = p.snapshot.interference_gains
    if gains.size == 0 or math.isinf(p.delta):
        return np.full(m.shape, budget)
    return np.minimum(m * p.delta / gains.max(), budget)


def solve_scenario1_slot(p: SlotProblem) -> SlotSolution:
    """
    Best (M, P) for a single-antenna plane by exhaustive sweep over M.

    Args:
        p: Slot problem with scenario 1 or 2 and a one-element plane antenna

    Returns:
        SlotSolution: Exact optimum; ties in rate go to the smallest M
    """
    if p.scenario not in (1, 2):
        raise ValueError(f"closed form applies to scenarios 1 and 2, got {p.scenario}")
    if p.n_plane != 1:
        raise ValueError(f"closed form needs a single-antenna plane, got {p.n_plane} elements")

    m_values = np.array(p.m_candidates())
    power = scenario1_power(p, m_values)
    gain = float(np.sum(np.abs(p.snapshot.H0) ** 2))  # beta_0 G^P G^A N_A
    snr = power * gain / (m_values * p.b * p.noise_psd)
    occupied = m_values * p.b if p.bandwidth is None else np.minimum(m_values * p.b, p.bandwidth)
    rates = occupied * p.mcs.efficiency(snr)

    best = int(np.argmax(rates))
    m_star = int(m_values[best])
    w = np.array([math.sqrt(power[best])], dtype=complex)
    report = interference_check(w, p.snapshot, m_star, p.delta)
    logger.debug(f"Slot {p.snapshot.slot_index}: closed form M*={m_star}, P*={power[best]:.4g} W")
    return SlotSolution(
        m_star=m_star,
        w=w,
        v_tilde=receive_bf(p.snapshot.u_A),
        rate_bps=float(rates[best]),
        upper_bound_bps=float(rates[best]),
        snr_linear=float(snr[best]),
        interference_margin_db=report.margin_db,
        max_interference_w=report.max_w,
        rank1=True,
        method=Method.CLOSED_FORM,
    )
