"""
SNR, receive beamforming and constraint bookkeeping for transmit vectors.
"""

import math
from dataclasses import dataclass

import numpy as np

from src.channel.synthesis import ChannelSnapshot

from .problem import SlotProblem

# keeps a rescaled SNR on the upper side of the top MCS threshold
SATURATION_HEADROOM = 1e-9


def a2g_snr(w: np.ndarray, v_tilde: np.ndarray, H0: np.ndarray, m: int, b: float, noise_psd: float) -> float:
    """Per-subchannel SNR |v^H H0 w|^2 / (M b sigma^2)."""
    if m < 1:
        raise ValueError(f"subchannel count must be >= 1, got {m}")
    v_tilde = np.atleast_1d(v_tilde)
    w = np.atleast_1d(w)
    gain = np.vdot(v_tilde, np.atleast_2d(H0) @ w)
    return float(abs(gain) ** 2 / (m * b * noise_psd))


def receive_bf(u_A: np.ndarray) -> np.ndarray:
    """Optimal receive combiner u_A / ||u_A||."""
    u_A = np.atleast_1d(np.asarray(u_A, dtype=complex))
    return u_A / np.linalg.norm(u_A)


@dataclass(frozen=True)
class InterferenceReport:
    per_tbs_w: np.ndarray
    max_w: float
    margin_db: float


def interference_check(w: np.ndarray, snapshot: ChannelSnapshot, m: int, delta: float) -> InterferenceReport:
    """
    Per-subchannel interference |h_i^H w|^2 / M at every TBS.

    Args:
        w: Transmit beamvector
        snapshot: Channel snapshot holding the h_i rows
        m: Subchannel count
        delta: Interference cap in W (may be inf)

    Returns:
        InterferenceReport: Per-TBS powers, their maximum and the dB margin to delta
    """
    per_tbs = np.abs(snapshot.h.conj() @ np.atleast_1d(w)) ** 2 / m
    worst = float(per_tbs.max()) if per_tbs.size else 0.0
    if worst == 0.0 or math.isinf(delta):
        margin = math.inf
    else:
        margin = 10.0 * math.log10(delta / worst)
    return InterferenceReport(per_tbs, worst, margin)


def feasible_scale(p: SlotProblem, m: int, candidates: np.ndarray) -> np.ndarray:
    """
    Largest power scaling z of each candidate row that keeps the sum-power,
    per-antenna and interference constraints; inf for all-zero rows.
    """
    candidates = np.atleast_2d(candidates)
    with np.errstate(divide="ignore"):
        total = p.p_max / np.sum(np.abs(candidates) ** 2, axis=1)
        per_antenna = p.p_ant / np.max(np.abs(candidates) ** 2, axis=1)
        z = np.minimum(total, per_antenna)
        if p.snapshot.n_tbs and math.isfinite(p.delta):
            worst = np.max(np.abs(candidates @ p.snapshot.h.conj().T) ** 2, axis=1)
            z = np.minimum(z, m * p.delta / worst)
    return z


def saturation_scale(p: SlotProblem, m: int, candidates: np.ndarray) -> np.ndarray:
    """Scaling that brings each candidate's SNR to the top MCS threshold."""
    candidates = np.atleast_2d(candidates)
    top = p.mcs.top_threshold
    if math.isinf(top):
        return np.full(len(candidates), math.inf)
    with np.errstate(divide="ignore"):
        return top * (1.0 + SATURATION_HEADROOM) * p.noise(m) / np.abs(candidates @ p.effective_vector.conj()) ** 2


def frontier_scale(p: SlotProblem, m: int, candidates: np.ndarray) -> np.ndarray:
    """Scale candidates onto the feasibility frontier, stopping at SNR saturation."""
    candidates = np.atleast_2d(candidates)
    z = np.minimum(feasible_scale(p, m, candidates), saturation_scale(p, m, candidates))
    z = np.where(np.isfinite(z), z, 0.0)
    return candidates * np.sqrt(z)[:, None]
