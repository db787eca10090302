"""Frames, Grammians and signature matrices.

A Parseval ``(n, k)``-frame is stored through its analysis operator ``V``
(an ``n x k`` isometry whose rows are the frame vectors).  For a 2-uniform
frame the Grammian is ``P = (k/n) I + c_{n,k} Q`` with ``Q`` a symmetric
matrix of zeros on the diagonal and signs elsewhere; all identities on
``Q`` are checked in exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import spectra
from .errors import (
    InconsistentParameters,
    InvalidInput,
    InvalidParameters,
    NotParseval,
    NotTwoUniform,
    NotTwoUniformSignature,
    NotUniform,
)

PARSEVAL_TOL = 1e-9
PREDICATE_TOL = 1e-8
MULT_TOL = 1e-6


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AnalysisOperator:
    """The ``n x k`` matrix ``V`` with ``(Vx)_i = <x, f_i>``."""

    matrix: np.ndarray

    def __post_init__(self):
        V = np.asarray(self.matrix, dtype=float)
        if V.ndim != 2 or V.shape[1] < 1 or V.shape[0] < V.shape[1]:
            raise InvalidInput(f"analysis operator must be n x k with n >= k >= 1, got {V.shape}")
        object.__setattr__(self, "matrix", _readonly(V))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def k(self) -> int:
        return self.matrix.shape[1]

    @property
    def vectors(self) -> np.ndarray:
        return self.matrix


@dataclass(frozen=True, eq=False)
class GrammianProjection:
    """Rank-``k`` orthogonal projection ``P = V V^T``."""

    matrix: np.ndarray

    def __post_init__(self):
        P = spectra.as_symmetric(self.matrix)
        if np.abs(P @ P - P).max() > PARSEVAL_TOL:
            raise InvalidInput("matrix is not idempotent")
        tr = float(np.trace(P))
        if abs(tr - round(tr)) > PARSEVAL_TOL:
            raise InvalidInput(f"trace {tr} is not an integer")
        object.__setattr__(self, "matrix", _readonly(P))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def k(self) -> int:
        return int(round(float(np.trace(self.matrix))))


@dataclass(frozen=True, eq=False)
class SignatureMatrix:
    """Symmetric integer matrix, zero diagonal, +-1 off the diagonal."""

    entries: np.ndarray

    def __post_init__(self):
        Q = np.asarray(self.entries)
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1] or Q.shape[0] < 1:
            raise InvalidInput(f"signature matrix must be square, got shape {Q.shape}")
        if not np.issubdtype(Q.dtype, np.integer):
            if not np.all(np.isfinite(Q)) or not np.array_equal(Q, np.round(Q)):
                raise InvalidInput("signature matrix entries must be integers")
        Q = Q.astype(np.int64)
        n = Q.shape[0]
        if np.any(np.diag(Q) != 0):
            raise InvalidInput("signature matrix must have a zero diagonal")
        off = ~np.eye(n, dtype=bool)
        if np.any(np.abs(Q[off]) != 1):
            raise InvalidInput("off-diagonal entries must be +1 or -1")
        if not np.array_equal(Q, Q.T):
            raise InvalidInput("signature matrix must be symmetric")
        object.__setattr__(self, "entries", _readonly(Q))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __eq__(self, other):
        if not isinstance(other, SignatureMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    def __neg__(self) -> "SignatureMatrix":
        return SignatureMatrix(-self.entries)

    def conjugate(self, U) -> "SignatureMatrix":
        """``U Q U^T`` for a signed permutation matrix ``U``."""
        U = np.asarray(U, dtype=np.int64)
        return SignatureMatrix(U @ self.entries @ U.T)


@dataclass(frozen=True)
class FrameParameters:
    n: int
    k: int
    mu: int
    rho1: float
    rho2: float
    c: float

    @property
    def redundancy(self) -> float:
        return self.n / self.k


def c_nk(n: int, k: int) -> float:
    """Common magnitude of the off-diagonal Grammian entries of a 2-uniform frame."""
    if not (1 <= k < n):
        raise InvalidParameters(f"need 1 <= k < n, got (n, k) = ({n}, {k})")
    return math.sqrt(k * (n - k) / (n * n * (n - 1)))


def _matrix(V) -> np.ndarray:
    if isinstance(V, AnalysisOperator):
        return V.matrix
    return np.asarray(V, dtype=float)


def grammian(V) -> GrammianProjection:
    M = _matrix(V)
    if not is_parseval(M, tol=PARSEVAL_TOL):
        raise NotParseval("V^T V deviates from the identity")
    P = M @ M.T
    return GrammianProjection((P + P.T) / 2)


def signature_parameters(Q: SignatureMatrix) -> FrameParameters:
    """All frame parameters of a signature matrix, or an error.

    ``Q^2 = (n-1) I + mu Q`` is verified with zero integer residual; ``k`` is
    then computed from ``mu`` and independently as the multiplicity of the
    larger eigenvalue, and the two must agree.
    """
    E = Q.entries
    n = Q.n
    if n < 2:
        raise NotTwoUniformSignature("a signature matrix needs n >= 2")
    R = E @ E - (n - 1) * np.eye(n, dtype=np.int64)
    mu = int(R[0, 1] * E[0, 1])
    if not np.array_equal(R, mu * E):
        raise NotTwoUniformSignature("Q^2 - (n-1)I is not a multiple of Q")

    root = math.sqrt(4 * (n - 1) + mu * mu)
    k_float = n / 2 - (mu * n / 2) / root
    k = int(round(k_float))
    if abs(k_float - k) > 1e-9 or not (1 <= k <= n - 1):
        raise InconsistentParameters(f"mu = {mu} gives non-integer k = {k_float}")
    rho1 = (mu + root) / 2
    rho2 = (mu - root) / 2

    eig = spectra.symm_eig(E.astype(float)).eigenvalues
    mult = int(np.count_nonzero(np.abs(eig - rho1) <= MULT_TOL))
    if mult != k:
        raise InconsistentParameters(f"mult(rho1) = {mult} but the mu formula gives k = {k}")
    return FrameParameters(n=n, k=k, mu=mu, rho1=rho1, rho2=rho2, c=c_nk(n, k))


def grammian_from_signature(Q: SignatureMatrix) -> GrammianProjection:
    par = signature_parameters(Q)
    P = (par.k / par.n) * np.eye(par.n) + par.c * Q.entries
    return GrammianProjection(P)


def signature_from_grammian(P) -> SignatureMatrix:
    M = P.matrix if isinstance(P, GrammianProjection) else spectra.as_symmetric(P)
    n = M.shape[0]
    k = int(round(float(np.trace(M))))
    if np.abs(np.diag(M) - k / n).max() > PREDICATE_TOL:
        raise NotUniform("diagonal of P is not constant k/n")
    if not (1 <= k < n):
        raise NotTwoUniform(f"no signature matrix for (n, k) = ({n}, {k})")
    c = c_nk(n, k)
    off = M[~np.eye(n, dtype=bool)]
    if np.abs(np.abs(off) - c).max() > PREDICATE_TOL:
        raise NotTwoUniform("off-diagonal magnitudes of P are not all c_{n,k}")
    Q = np.sign(M).astype(np.int64)
    np.fill_diagonal(Q, 0)
    return SignatureMatrix(Q)


def frame_from_signature(Q: SignatureMatrix) -> AnalysisOperator:
    """Factor ``P = V V^T`` using an orthonormal eigenbasis of the range of ``P``."""
    P = grammian_from_signature(Q).matrix
    dec = spectra.symm_eig(P)
    V = dec.eigenvectors[:, dec.eigenvalues > 0.5]
    # deterministic sign: largest-magnitude entry of each column positive
    pivots = np.argmax(np.abs(V), axis=0)
    V = V * np.sign(V[pivots, np.arange(V.shape[1])])
    return AnalysisOperator(V)


def is_parseval(V, tol: float = PREDICATE_TOL) -> bool:
    M = _matrix(V)
    if M.ndim != 2 or M.shape[0] < M.shape[1]:
        return False
    return bool(np.abs(M.T @ M - np.eye(M.shape[1])).max() <= tol)


def is_uniform(V, tol: float = PREDICATE_TOL) -> bool:
    M = _matrix(V)
    if not is_parseval(M, tol):
        return False
    n, k = M.shape
    return bool(np.abs(np.sum(M * M, axis=1) - k / n).max() <= tol)


def is_two_uniform(V, tol: float = PREDICATE_TOL) -> bool:
    """Uniform with all ``|<f_i, f_j>| = c_{n,k}``; vacuously true when n = k."""
    M = _matrix(V)
    if not is_uniform(M, tol):
        return False
    n, k = M.shape
    if n == k:
        return True
    G = M @ M.T
    off = G[~np.eye(n, dtype=bool)]
    return bool(np.abs(np.abs(off) - c_nk(n, k)).max() <= tol)


def is_three_uniform(V, tol: float = PREDICATE_TOL) -> bool:
    M = _matrix(V)
    if not is_two_uniform(M, tol):
        return False
    n = M.shape[0]
    if n < 3:
        return True
    G = M @ M.T
    idx = np.array(list(combinations(range(n), 3)))
    norms = spectra.top_eigenvalues(G[idx[:, :, None], idx[:, None, :]])
    return bool(norms.max() - norms.min() <= tol)
