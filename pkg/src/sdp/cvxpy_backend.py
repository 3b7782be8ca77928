"""
Reference SDP backend on cvxpy.

Only used when explicitly selected or for cross-checks; cvxpy is an optional
dependency (the `oracle` extra).
"""

import importlib.util
import logging
import math

import numpy as np

from src.utils.errors import DescentLinkError

from .admm import feasible_scale, psd_project
from .factor import numerical_rank
from .problem import LinearSdp, SdpSolution, SdpStatus

logger = logging.getLogger(__name__)


def cvxpy_available() -> bool:
    return importlib.util.find_spec("cvxpy") is not None


def solve_with_cvxpy(problem: LinearSdp, tol: float = 1e-6, rank_tol: float = 1e-6, **_) -> SdpSolution:
    """Solve the SDP with cvxpy's default conic solver; the result is made exactly feasible."""
    try:
        import cvxpy as cp
    except ImportError:
        raise DescentLinkError("the cvxpy backend needs the optional 'oracle' extra (pip install cvxpy)")

    problem.validate()
    n = problem.dim
    W = cp.Variable((n, n), hermitian=True)
    constraints = [W >> 0, cp.real(cp.trace(W)) <= problem.p_max]
    if math.isfinite(problem.p_ant):
        constraints.append(cp.real(cp.diag(W)) <= problem.p_ant)
    for A, c in problem.constraints:
        if math.isfinite(c):
            constraints.append(cp.real(cp.trace(A @ W)) <= c)

    prob = cp.Problem(cp.Maximize(cp.real(cp.trace(problem.C @ W))), constraints)
    prob.solve()
    if prob.status not in ("optimal", "optimal_inaccurate") or W.value is None:
        logger.warning(f"cvxpy finished with status {prob.status}")
        zero = np.zeros((n, n), dtype=complex)
        return SdpSolution(zero, 0.0, SdpStatus.INFEASIBLE_TOLERANCE)

    matrices, bounds = problem.rows()
    Z = psd_project(np.asarray(W.value, dtype=complex))
    values = np.array([np.vdot(A, Z).real for A in matrices])
    W_star = feasible_scale(values, bounds) * Z
    objective = float(np.vdot(problem.C, W_star).real)
    status = SdpStatus.OPTIMAL if prob.status == "optimal" else SdpStatus.MAX_ITERATIONS
    return SdpSolution(
        W_star=W_star,
        objective_value=objective,
        status=status,
        gap=abs(float(prob.value) - objective) / max(abs(float(prob.value)), 1e-300),
        numerical_rank=numerical_rank(W_star, rank_tol) if objective > 0 else 0,
        dual_bound=max(float(prob.value) * (1.0 + tol), objective),
    )
