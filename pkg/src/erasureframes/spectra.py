"""Dense symmetric eigensolvers and minimal-norm left inverses.

Everything here works on plain ``numpy`` arrays.  The production path uses
LAPACK through :func:`numpy.linalg.eigh`; :func:`jacobi_eigenvalues` is a
self-contained cyclic Jacobi solver kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NotLeftInvertible

TOL_EIG = 1e-10
RANK_TOL = 1e-10


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # columns, orthonormal

    def reconstruct(self) -> np.ndarray:
        vecs = self.eigenvectors
        return (vecs * self.eigenvalues) @ vecs.T


def as_symmetric(M) -> np.ndarray:
    """Validate ``M`` as a finite, exactly symmetric square matrix."""
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise InvalidInput(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidInput("matrix has non-finite entries")
    if not np.array_equal(A, A.T):
        raise InvalidInput("matrix is not symmetric as stored")
    return A


def symm_eig(M) -> EigenDecomposition:
    A = as_symmetric(M)
    w, v = np.linalg.eigh(A)
    return EigenDecomposition(w, v)


def top_eigenvalue(M) -> float:
    """Largest eigenvalue; the operator norm when ``M`` is positive semidefinite."""
    A = as_symmetric(M)
    return float(np.linalg.eigvalsh(A)[-1])


def top_eigenvalues(blocks: np.ndarray) -> np.ndarray:
    """Largest eigenvalue of each matrix in a stack of shape (B, m, m)."""
    return np.linalg.eigvalsh(blocks)[:, -1]


def multiplicities(eigenvalues, tol: float = 1e-6) -> list[tuple[float, int]]:
    """Group ascending eigenvalues into (value, multiplicity) clusters."""
    groups: list[list[float]] = []
    for lam in eigenvalues:
        if groups and abs(lam - groups[-1][-1]) <= tol:
            groups[-1].append(float(lam))
        else:
            groups.append([float(lam)])
    return [(float(np.mean(g)), len(g)) for g in groups]


def jacobi_eigenvalues(M, tol: float = 1e-15, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending."""
    A = as_symmetric(M).copy()
    n = A.shape[0]
    scale = max(np.abs(A).max(), 1.0)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.triu(A, 1) ** 2))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp = A[:, p].copy()
                cq = A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
    return np.sort(np.diag(A))


def minimal_left_inverse(A) -> tuple[np.ndarray, float]:
    """Minimum-norm left inverse of a tall matrix via its polar decomposition.

    With ``A = W T`` and ``T = (A^T A)^{1/2}``, the left inverse of least
    operator norm is ``T^{-1} W^T = (A^T A)^{-1} A^T``; its norm is
    ``1 / t_min`` where ``t_min`` is the smallest eigenvalue of ``T``.
    Computed from the SVD of ``A`` rather than the normal equations, which
    would square the condition number.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] < A.shape[1] or A.shape[1] < 1:
        raise InvalidInput(f"expected a tall n x k matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidInput("matrix has non-finite entries")
    U, sing, Wt = np.linalg.svd(A, full_matrices=False)
    t_min = float(sing[-1])
    if t_min <= RANK_TOL:
        raise NotLeftInvertible(f"smallest singular value {t_min:.3g} is below {RANK_TOL}")
    L = (Wt.T / sing) @ U.T
    return L, t_min
