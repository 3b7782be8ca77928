"""
Problem and solution types for linear-objective semidefinite programs.

    maximize    Re tr(C W)
    subject to  tr(W) <= P_max
                W_mm <= P_ant           for every m
                Re tr(A_k W) <= c_k     for every k
                W Hermitian PSD
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from src.utils.errors import SdpInputError

MAX_DIM = 64
MAX_CONSTRAINTS = 1024


class SdpStatus(Enum):
    OPTIMAL = "optimal"
    MAX_ITERATIONS = "max_iterations"
    INFEASIBLE_TOLERANCE = "infeasible_tolerance"


def _is_hermitian(matrix: np.ndarray) -> bool:
    scale = max(1.0, float(np.max(np.abs(matrix)))) if matrix.size else 1.0
    return bool(np.allclose(matrix, matrix.conj().T, rtol=0.0, atol=1e-9 * scale))


@dataclass
class LinearSdp:
    C: np.ndarray
    p_max: float
    p_ant: float = math.inf
    constraints: List[Tuple[np.ndarray, float]] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.C.shape[0]

    def validate(self, max_dim: int = MAX_DIM, max_constraints: int = MAX_CONSTRAINTS):
        C = np.atleast_2d(np.asarray(self.C))
        if C.ndim != 2 or C.shape[0] != C.shape[1]:
            raise SdpInputError(f"objective matrix must be square, got shape {C.shape}")
        if not _is_hermitian(C):
            raise SdpInputError("objective matrix is not Hermitian")
        if C.shape[0] > max_dim:
            raise SdpInputError(f"dimension {C.shape[0]} exceeds the cap of {max_dim}")
        if len(self.constraints) + C.shape[0] + 1 > max_constraints:
            raise SdpInputError(f"{len(self.constraints)} constraints exceed the cap of {max_constraints}")
        if not (self.p_max > 0 and math.isfinite(self.p_max)):
            raise SdpInputError(f"trace budget must be positive and finite, got {self.p_max}")
        if not self.p_ant > 0:
            raise SdpInputError(f"per-antenna budget must be positive, got {self.p_ant}")
        for index, (A, c) in enumerate(self.constraints):
            A = np.asarray(A)
            if A.shape != C.shape:
                raise SdpInputError(f"constraint {index} has shape {A.shape}, expected {C.shape}")
            if not _is_hermitian(A):
                raise SdpInputError(f"constraint {index} is not Hermitian")
            if c < 0:
                raise SdpInputError(f"constraint {index} has a negative bound {c}")
        self.C = C

    def rows(self) -> Tuple[List[np.ndarray], np.ndarray]:
        """All finite inequality rows, trace first, then diagonal, then the rest."""
        n = self.dim
        matrices = [np.eye(n, dtype=complex)]
        bounds = [self.p_max]
        if self.p_ant < self.p_max:
            for m in range(n):
                E = np.zeros((n, n), dtype=complex)
                E[m, m] = 1.0
                matrices.append(E)
                bounds.append(self.p_ant)
        for A, c in self.constraints:
            if math.isfinite(c) and np.any(A):
                matrices.append(np.asarray(A, dtype=complex))
                bounds.append(float(c))
        return matrices, np.array(bounds, dtype=float)


@dataclass
class AdmmState:
    """Scaled ADMM iterates, reusable as a warm start for a same-shaped problem."""

    Z: np.ndarray
    U: np.ndarray
    u: np.ndarray
    rho: float


@dataclass
class SdpSolution:
    W_star: np.ndarray
    objective_value: float
    status: SdpStatus
    primal_residual: float = 0.0
    dual_residual: float = 0.0
    gap: float = 0.0
    numerical_rank: int = 0
    dual_bound: float = math.inf
    iterations: int = 0
    history: List[Tuple[int, float, float, float, float]] = field(default_factory=list)
    warm_start: Optional[AdmmState] = None

    @property
    def upper_bound(self) -> float:
        """Certified bound on the optimal objective."""
        return max(self.dual_bound, self.objective_value)
