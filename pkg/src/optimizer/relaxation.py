"""
Semidefinite relaxation of the per-slot problem for a fixed subchannel count.

Each surrogate a * snr^c + d is strictly increasing in the SNR, so maximizing
it over the relaxed set is the same as maximizing tr(C W); the surrogate's
saturation point becomes one more linear row, tr(C W) <= M b sigma^2 * cap.
That row only clips the objective, so every surrogate's relaxation follows
from one uncapped solve by scaling W down to the cap.

Without interference rows the relaxation is solved in closed form by the
phase-aligned power-limited vector, and that vector stays optimal for every
M at which it already meets the caps.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from src.linkrate.surrogate import Surrogate, snr_cap
from src.sdp.dispatch import solve_sdp
from src.sdp.problem import AdmmState, LinearSdp, SdpSolution, SdpStatus

from .problem import SlotProblem

logger = logging.getLogger(__name__)


@dataclass
class UpperBound:
    rate_bps: float
    W: np.ndarray
    solution: SdpSolution


@dataclass
class Relaxation:
    """Uncapped relaxed solution for one subchannel count."""

    solution: SdpSolution
    closed_form: bool
    tol: float
    sdp_solves: int = 0
    max_iter_hits: int = 0


def build_relaxed_sdp(p: SlotProblem, m: int, surrogate: Optional[Surrogate]) -> LinearSdp:
    """Linear SDP for subchannel count m; surrogate None (Shannon) adds no cap row."""
    constraints = []
    if math.isfinite(p.delta):
        for h in p.snapshot.h:
            constraints.append((np.outer(h, h.conj()), m * p.delta))
    if surrogate is not None and not p.shannon:
        cap = snr_cap(surrogate)
        if math.isfinite(cap):
            constraints.append((p.objective_matrix, p.noise(m) * cap))
    return LinearSdp(p.objective_matrix, p.p_max, p.p_ant, constraints)


def solve_relaxed(
    p: SlotProblem,
    m: int,
    surrogate: Optional[Surrogate],
    warm_start: Optional[AdmmState] = None,
    tol: Optional[float] = None,
) -> SdpSolution:
    settings = p.settings
    kwargs = dict(tol=settings.tol if tol is None else tol, rank_tol=settings.rank_tol)
    if settings.backend == "admm":
        kwargs.update(max_iter=settings.max_iter, warm_start=warm_start, record_history=settings.record_history)
    return solve_sdp(build_relaxed_sdp(p, m, surrogate), settings.backend, **kwargs)


def power_limited_vector(p: SlotProblem) -> np.ndarray:
    """
    Maximizer of |a^H w|^2 under the sum-power and per-antenna budgets alone.

    Every entry is phase-aligned with a. Magnitudes are water-filled on |a|:
    the strongest entries sit at the per-antenna budget and the rest are
    proportional to |a_i| so that the sum-power budget is met.
    """
    a = p.effective_vector
    magnitude = np.abs(a)
    n = len(a)
    if not np.any(magnitude > 0):
        return np.zeros(n, dtype=complex)
    phase = np.where(magnitude > 0, a / np.where(magnitude > 0, magnitude, 1.0), 0.0)
    p_ant = min(p.p_ant, p.p_max)

    if n * p_ant <= p.p_max:
        radius = np.full(n, math.sqrt(p_ant))
    else:
        order = np.argsort(-magnitude, kind="stable")
        ranked = magnitude[order]
        tail = np.cumsum((ranked ** 2)[::-1])[::-1]
        ranked_radius = np.full(n, math.sqrt(p_ant))
        for k in range(n):
            if tail[k] <= 0:
                ranked_radius[k:] = 0.0
                break
            t = math.sqrt((p.p_max - k * p_ant) / tail[k])
            if t * ranked[k] <= math.sqrt(p_ant):
                ranked_radius[k:] = t * ranked[k:]
                break
        radius = np.empty(n)
        radius[order] = ranked_radius

    w = radius * phase
    total = float(np.sum(np.abs(w) ** 2))
    if total > p.p_max:
        w = w * math.sqrt(p.p_max / total)
    return w


def interference_free_m(p: SlotProblem, w: np.ndarray) -> int:
    """Smallest subchannel count at which w meets every per-TBS cap M * delta."""
    if not p.snapshot.n_tbs or math.isinf(p.delta):
        return 1
    worst = float(np.max(np.abs(p.snapshot.h.conj() @ w) ** 2))
    m = max(1, math.ceil(worst / p.delta))
    while m * p.delta < worst:
        m += 1
    return m


def power_limited_solution(p: SlotProblem, w: np.ndarray) -> SdpSolution:
    """Relaxed solution W = w w^H with its exact objective."""
    gain = float(np.abs(np.vdot(p.effective_vector, w)) ** 2)
    return SdpSolution(
        W_star=np.outer(w, w.conj()),
        objective_value=gain,
        status=SdpStatus.OPTIMAL,
        numerical_rank=1 if gain > 0 else 0,
        dual_bound=gain,
    )


def relax_slot(
    p: SlotProblem, m: int, warm_start: Optional[AdmmState] = None, tol: Optional[float] = None
) -> Relaxation:
    """
    Uncapped relaxation for subchannel count m.

    Args:
        p: Slot problem (scenario 3 or 4)
        m: Subchannel count
        warm_start: ADMM iterates from a previous solve
        tol: Solver tolerance, the configured one when None

    Returns:
        Relaxation: Closed-form solution when the power-limited vector meets
        the caps at m, the SDP solution otherwise
    """
    w = power_limited_vector(p)
    if m >= interference_free_m(p, w):
        return Relaxation(power_limited_solution(p, w), True, 0.0)
    tol = p.settings.tol if tol is None else tol
    solution = solve_relaxed(p, m, None, warm_start, tol)
    hit = solution.status is SdpStatus.MAX_ITERATIONS
    if hit:
        logger.warning(f"Slot {p.snapshot.slot_index}, M={m}: relaxation hit the iteration limit")
    return Relaxation(solution, False, tol, 1, int(hit))


def cap_relaxation(p: SlotProblem, m: int, surrogate: Optional[Surrogate], solution: SdpSolution) -> SdpSolution:
    """Relaxed solution with the surrogate's saturation row added, derived from the uncapped one."""
    if surrogate is None or p.shannon:
        return solution
    cap = snr_cap(surrogate)
    if not math.isfinite(cap):
        return solution
    limit = p.noise(m) * cap
    dual_bound = min(solution.dual_bound, limit)
    if solution.objective_value <= limit:
        return replace(solution, dual_bound=dual_bound)
    return replace(
        solution,
        W_star=solution.W_star * (limit / solution.objective_value),
        objective_value=limit,
        dual_bound=dual_bound,
    )


def surrogate_rate(p: SlotProblem, m: int, surrogate: Surrogate, snr: float) -> float:
    if p.shannon:
        return p.occupied(m) * float(np.log2(1.0 + snr))
    return p.occupied(m) * surrogate.efficiency(snr)


def trace_bound_rate(p: SlotProblem, m: int) -> float:
    """Bound from the sum-power budget alone: P_max * lambda_max(C)."""
    top = float(np.real(np.vdot(p.effective_vector, p.effective_vector)))
    return surrogate_rate(p, m, p.upper_surrogate, p.p_max * top / p.noise(m))


def upper_bound_from_solution(p: SlotProblem, m: int, solution: SdpSolution) -> float:
    """Rate bound from a relaxed solution of the upper surrogate's SDP."""
    if solution.status is SdpStatus.MAX_ITERATIONS:
        return trace_bound_rate(p, m)
    snr = solution.upper_bound / p.noise(m)
    return surrogate_rate(p, m, p.upper_surrogate, snr)


def upper_bound_rate(p: SlotProblem, m: int, solution: SdpSolution) -> float:
    """Rate bound for m from the uncapped relaxed solution."""
    return upper_bound_from_solution(p, m, cap_relaxation(p, m, p.upper_surrogate, solution))


def upper_bound_slot(p: SlotProblem, m: int, warm_start: Optional[AdmmState] = None) -> UpperBound:
    """
    Relaxation upper bound on the slot rate for subchannel count m.

    Args:
        p: Slot problem (scenario 3 or 4)
        m: Subchannel count
        warm_start: ADMM iterates from a previous solve

    Returns:
        UpperBound: Bound in bits/s with the relaxed matrix and solver output
    """
    if p.scenario not in (3, 4):
        raise ValueError(f"relaxation bound applies to scenarios 3 and 4, got {p.scenario}")
    relaxation = relax_slot(p, m, warm_start)
    capped = cap_relaxation(p, m, p.upper_surrogate, relaxation.solution)
    return UpperBound(upper_bound_from_solution(p, m, capped), capped.W_star, capped)
