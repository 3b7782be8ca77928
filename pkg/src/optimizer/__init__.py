"""
Optimizer module for descentlink.

Per-slot choice of subchannel count, transmit beamvector and receive
combiner: closed form for single-antenna planes, semidefinite relaxation with
randomized rounding for arrays, and the subchannel-count search.
"""

from .problem import Method, SlotProblem, SlotSolution, SolverSettings
from .snr import a2g_snr, receive_bf, interference_check, InterferenceReport, frontier_scale
from .closed_form import solve_scenario1_slot
from .relaxation import (
    Relaxation,
    UpperBound,
    build_relaxed_sdp,
    cap_relaxation,
    interference_free_m,
    power_limited_vector,
    relax_slot,
    upper_bound_slot,
)
from .feasible import NeighborCache, FeasibleResult, feasible_slot, is_tight, randomize
from .sweep import geometric_grid, evaluate_m, rate_ceilings, sweep_M

__all__ = [
    "Method",
    "SlotProblem",
    "SlotSolution",
    "SolverSettings",
    "a2g_snr",
    "receive_bf",
    "interference_check",
    "InterferenceReport",
    "frontier_scale",
    "solve_scenario1_slot",
    "Relaxation",
    "UpperBound",
    "build_relaxed_sdp",
    "cap_relaxation",
    "interference_free_m",
    "power_limited_vector",
    "relax_slot",
    "upper_bound_slot",
    "NeighborCache",
    "FeasibleResult",
    "feasible_slot",
    "is_tight",
    "randomize",
    "geometric_grid",
    "evaluate_m",
    "rate_ceilings",
    "sweep_M",
]
