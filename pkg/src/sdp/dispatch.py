"""
Backend selection.
"""

from typing import Callable, Dict

from .admm import solve_linear_sdp
from .cvxpy_backend import solve_with_cvxpy
from .problem import LinearSdp, SdpSolution

BACKENDS: Dict[str, Callable[..., SdpSolution]] = {
    "admm": solve_linear_sdp,
    "cvxpy": solve_with_cvxpy,
}


def solve_sdp(problem: LinearSdp, backend: str = "admm", **kwargs) -> SdpSolution:
    """Solve with the named backend; keyword arguments go to the backend."""
    try:
        solver = BACKENDS[backend]
    except KeyError:
        raise ValueError(f"unknown SDP backend {backend!r}, expected one of {sorted(BACKENDS)}")
    return solver(problem, **kwargs)
