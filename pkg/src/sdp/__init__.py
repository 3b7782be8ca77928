"""
SDP module for descentlink.

Linear-objective Hermitian semidefinite programs with trace, per-diagonal and
PSD-matrix inequality constraints, solved by operator splitting (ADMM) with an
optional cvxpy reference backend.
"""

from .problem import LinearSdp, SdpSolution, SdpStatus, AdmmState
from .admm import solve_linear_sdp, psd_project, dual_bound
from .factor import numerical_rank, principal_factor
from .cvxpy_backend import solve_with_cvxpy, cvxpy_available
from .dispatch import BACKENDS, solve_sdp

__all__ = [
    "LinearSdp",
    "SdpSolution",
    "SdpStatus",
    "AdmmState",
    "solve_linear_sdp",
    "psd_project",
    "dual_bound",
    "numerical_rank",
    "principal_factor",
    "solve_with_cvxpy",
    "cvxpy_available",
    "BACKENDS",
    "solve_sdp",
]
