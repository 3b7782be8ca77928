"""
ADMM solver for linear-objective Hermitian SDPs.

The problem is split as W = Z (Z PSD) and A(W) = y (y <= b), where A stacks
every inequality row. Rows are normalized to unit Frobenius norm, W is scaled
by the trace budget and C by its spectral norm. The W-update solves
(I + A*A) W = r with the Woodbury identity and a Cholesky factor of the small
Gram matrix, so each iteration costs one Hermitian eigendecomposition.

Every returned solution is exactly feasible: the PSD iterate is shrunk by the
largest factor in (0, 1] meeting all rows. The Lagrangian bound

    sum_k lambda_k b_k + P_max * max(0, lambda_max(C - sum_k lambda_k A_k))

holds for any lambda >= 0 and certifies the optimal value from above; it also
drives the stopping test.
"""

import logging
import math
from typing import Optional

import numpy as np
from scipy.linalg import cho_factor, cho_solve, eigh

from .factor import numerical_rank
from .problem import AdmmState, LinearSdp, SdpSolution, SdpStatus

logger = logging.getLogger(__name__)

ABS_TOL = 1e-9
RHO_MU = 10.0
RHO_TAU = 2.0


def psd_project(X: np.ndarray) -> np.ndarray:
    """Projection of a Hermitian matrix onto the PSD cone."""
    eigenvalues, eigenvectors = eigh((X + X.conj().T) / 2.0)
    clipped = np.clip(eigenvalues, 0.0, None)
    return (eigenvectors * clipped) @ eigenvectors.conj().T


def dual_bound(C: np.ndarray, matrices, bounds: np.ndarray, multipliers: np.ndarray, trace_budget: float) -> float:
    """Lagrangian upper bound on max Re tr(CW) over W PSD with tr(W) <= trace_budget."""
    multipliers = np.clip(multipliers, 0.0, None)
    reduced = C - sum((lam * A for lam, A in zip(multipliers, matrices) if lam > 0), np.zeros_like(C))
    top = eigh((reduced + reduced.conj().T) / 2.0, eigvals_only=True)[-1]
    return float(multipliers @ bounds + trace_budget * max(0.0, top))


def feasible_scale(values: np.ndarray, bounds: np.ndarray) -> float:
    positive = values > 0
    if not np.any(positive):
        return 1.0
    return float(min(1.0, np.min(bounds[positive] / values[positive])))


def solve_linear_sdp(
    problem: LinearSdp,
    tol: float = 1e-6,
    max_iter: int = 50000,
    warm_start: Optional[AdmmState] = None,
    rho: float = 1.0,
    check_every: int = 10,
    rank_tol: float = 1e-6,
    record_history: bool = False,
) -> SdpSolution:
    """
    Maximize Re tr(C W) over the problem's feasible set.

    Args:
        problem: SDP instance
        tol: Relative tolerance on residuals and on the certified gap
        max_iter: Iteration limit
        warm_start: Iterates of a previous solve of a same-shaped problem
        rho: Initial penalty parameter
        check_every: Iterations between convergence checks
        rank_tol: Relative eigenvalue threshold for the reported rank
        record_history: Keep (iteration, primal, dual, gap, rho) per check

    Returns:
        SdpSolution: Feasible W_star with its objective and certified bound
    """
    problem.validate()
    n = problem.dim
    matrices, bounds = problem.rows()
    m = len(matrices)

    c_eigenvalues = eigh(problem.C, eigvals_only=True)
    c_scale = float(max(abs(c_eigenvalues[0]), abs(c_eigenvalues[-1])))
    if c_scale == 0.0 or c_eigenvalues[-1] <= 0.0:
        # nothing to gain from any PSD W
        zero = np.zeros((n, n), dtype=complex)
        return SdpSolution(zero, 0.0, SdpStatus.OPTIMAL, dual_bound=0.0, numerical_rank=0)

    w_scale = problem.p_max
    norms = np.array([np.linalg.norm(A) for A in matrices])
    A_rows = np.array([(A / norm).ravel() for A, norm in zip(matrices, norms)])
    A_conj = A_rows.conj()
    b = bounds / norms / w_scale
    C = problem.C / c_scale
    factor = cho_factor(np.eye(m) + (A_conj @ A_rows.T).real)

    def apply_rows(X):
        return (A_conj @ X.ravel()).real

    def adjoint(v):
        return (v @ A_rows).reshape(n, n)

    trivial_bound = float(c_eigenvalues[-1]) / c_scale

    def certify(multipliers):
        multipliers = np.clip(multipliers, 0.0, None)
        reduced = C - adjoint(multipliers)
        top = eigh((reduced + reduced.conj().T) / 2.0, eigvals_only=True)[-1]
        return min(float(multipliers @ b) + max(0.0, float(top)), trivial_bound)

    if warm_start is not None and warm_start.Z.shape == (n, n) and warm_start.u.shape == (m,):
        Z, U, u, rho = warm_start.Z.copy(), warm_start.U.copy(), warm_start.u.copy(), warm_start.rho
    else:
        Z = np.zeros((n, n), dtype=complex)
        U = np.zeros((n, n), dtype=complex)
        u = np.zeros(m)
    y = np.minimum(apply_rows(Z), b)

    status = SdpStatus.MAX_ITERATIONS
    history = []
    primal_res = dual_res = gap = math.inf
    eps_pri = eps_dual = 0.0
    iteration = 0
    for iteration in range(1, max_iter + 1):
        R = C / rho + Z - U + adjoint(y - u)
        W = R - adjoint(cho_solve(factor, apply_rows(R)))
        W = (W + W.conj().T) / 2.0
        AW = apply_rows(W)

        Z_old, y_old = Z, y
        Z = psd_project(W + U)
        y = np.minimum(AW + u, b)
        U = U + W - Z
        u = u + AW - y

        if iteration % check_every and iteration != max_iter:
            continue

        primal_res = math.sqrt(np.linalg.norm(W - Z) ** 2 + np.linalg.norm(AW - y) ** 2)
        dual_res = rho * float(np.linalg.norm(Z - Z_old + adjoint(y - y_old)))
        eps_pri = math.sqrt(n * n + m) * ABS_TOL + tol * max(
            math.sqrt(np.linalg.norm(W) ** 2 + np.linalg.norm(AW) ** 2),
            math.sqrt(np.linalg.norm(Z) ** 2 + np.linalg.norm(y) ** 2),
        )
        eps_dual = n * ABS_TOL + tol * rho * float(np.linalg.norm(U + adjoint(u)))

        scale = feasible_scale(apply_rows(Z), b)
        objective = scale * float(np.vdot(C, Z).real)
        bound = certify(rho * u)
        gap = (bound - objective) / max(abs(bound), 1e-300)
        if record_history:
            history.append((iteration, primal_res, dual_res, gap, rho))

        if gap <= tol or (primal_res <= eps_pri and dual_res <= eps_dual):
            status = SdpStatus.OPTIMAL
            break

        if primal_res > RHO_MU * dual_res:
            rho *= RHO_TAU
            U /= RHO_TAU
            u /= RHO_TAU
        elif dual_res > RHO_MU * primal_res:
            rho /= RHO_TAU
            U *= RHO_TAU
            u *= RHO_TAU

    if status is SdpStatus.MAX_ITERATIONS and (
        gap <= 10 * tol or (primal_res <= 10 * eps_pri and dual_res <= 10 * eps_dual)
    ):
        status = SdpStatus.OPTIMAL

    scale = feasible_scale(apply_rows(Z), b)
    W_star = w_scale * scale * Z
    W_star = (W_star + W_star.conj().T) / 2.0
    if not np.all(np.isfinite(W_star)):
        status = SdpStatus.INFEASIBLE_TOLERANCE
        W_star = np.zeros((n, n), dtype=complex)
    objective_value = float(np.vdot(problem.C, W_star).real)
    certified = c_scale * w_scale * certify(rho * u)

    if status is SdpStatus.MAX_ITERATIONS:
        logger.warning(
            f"SDP (n={n}, rows={m}) stopped after {iteration} iterations: "
            f"primal={primal_res:.2e}, dual={dual_res:.2e}, gap={gap:.2e}"
        )
    else:
        logger.debug(f"SDP (n={n}, rows={m}) solved in {iteration} iterations, gap={gap:.2e}")

    return SdpSolution(
        W_star=W_star,
        objective_value=objective_value,
        status=status,
        primal_residual=primal_res,
        dual_residual=dual_res,
        gap=gap,
        numerical_rank=numerical_rank(W_star, rank_tol) if objective_value > 0 else 0,
        dual_bound=max(certified, objective_value),
        iterations=iteration,
        history=history,
        warm_start=AdmmState(Z, U, u, rho),
    )
