"""
Rank diagnostics and principal factorization of PSD matrices.
"""

import numpy as np
from scipy.linalg import eigh


def numerical_rank(W: np.ndarray, rank_tol: float = 1e-6) -> int:
    """Number of eigenvalues above rank_tol times the largest one."""
    eigenvalues = eigh(np.atleast_2d(W), eigvals_only=True)
    top = eigenvalues[-1]
    if top <= 0:
        return 0
    return int(np.sum(eigenvalues > rank_tol * top))


def principal_factor(W: np.ndarray) -> np.ndarray:
    """
    sqrt(lambda_max) times the top eigenvector of W.

    The global phase is fixed so that the largest-magnitude entry is real and
    positive.
    """
    eigenvalues, eigenvectors = eigh(np.atleast_2d(W))
    vector = eigenvectors[:, -1].astype(complex)
    pivot = int(np.argmax(np.abs(vector)))
    if abs(vector[pivot]) > 0:
        vector = vector * np.exp(-1j * np.angle(vector[pivot]))
        vector[pivot] = abs(vector[pivot])
    return np.sqrt(max(float(eigenvalues[-1]), 0.0)) * vector
