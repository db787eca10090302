"""Generators for concrete signature matrices and the basis-repetition frame."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, InvalidParameters
from .frames import AnalysisOperator, SignatureMatrix

H4 = np.array(
    [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]],
    dtype=np.int64,
)


class Kind(enum.Enum):
    TRIVIAL_DIM1 = "trivial-dim1"
    TRIVIAL_CODIM1 = "trivial-codim1"
    PALEY_CONFERENCE = "paley"
    GRAPH_HADAMARD_PLUS = "hadamard-plus"
    GRAPH_HADAMARD_MINUS = "hadamard-minus"
    BASIS_REPETITION = "basis-repetition"


@dataclass(frozen=True)
class ConstructionRecipe:
    """A construction kind plus its size parameter.

    The size is ``n`` for trivial frames, the prime ``p`` for Paley, the
    order ``4**m`` for graph Hadamards and ``k`` for basis repetition.
    """

    kind: Kind
    size: int

    def build(self):
        if self.kind is Kind.TRIVIAL_DIM1:
            return trivial_signature(self.size, codim1=False)
        if self.kind is Kind.TRIVIAL_CODIM1:
            return trivial_signature(self.size, codim1=True)
        if self.kind is Kind.PALEY_CONFERENCE:
            return paley_conference(self.size)
        if self.kind is Kind.GRAPH_HADAMARD_PLUS:
            return hadamard_signature(graph_hadamard(self.size), plus=True)
        if self.kind is Kind.GRAPH_HADAMARD_MINUS:
            return hadamard_signature(graph_hadamard(self.size), plus=False)
        return basis_repetition(self.size)


def trivial_signature(n: int, codim1: bool = False) -> SignatureMatrix:
    """``J - I`` (a 2-uniform (n,1)-frame) or ``I - J`` (an (n, n-1)-frame)."""
    if n < 2:
        raise InvalidParameters(f"trivial frames need n >= 2, got {n}")
    Q = np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64)
    return SignatureMatrix(-Q if codim1 else Q)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def paley_conference(p: int) -> SignatureMatrix:
    """Symmetric conference matrix of order ``p + 1`` for a prime ``p = 1 mod 4``.

    Rows and columns are indexed by the point at infinity followed by
    ``GF(p) = {0, ..., p-1}``; the border is all ``+1`` and the core entry
    at ``(x, y)`` is the Legendre symbol of ``y - x``.
    """
    if not is_prime(p) or p % 4 != 1:
        raise InvalidParameters(f"Paley construction needs a prime p = 1 (mod 4), got {p}")
    chi = np.array([legendre(a, p) for a in range(p)], dtype=np.int64)
    x = np.arange(p)
    C = np.zeros((p + 1, p + 1), dtype=np.int64)
    C[0, 1:] = 1
    C[1:, 0] = 1
    C[1:, 1:] = chi[(x[None, :] - x[:, None]) % p]
    return SignatureMatrix(C)


def graph_hadamard(order: int) -> np.ndarray:
    """Kronecker power of the fixed 4 x 4 graph Hadamard, of size ``order = 4**m``."""
    m = 0
    size = 1
    while size < order:
        size *= 4
        m += 1
    if order < 4 or size != order:
        raise InvalidParameters(f"graph Hadamard order must be a power of 4, got {order}")
    H = H4
    for _ in range(m - 1):
        H = np.kron(H, H4)
    return H


def is_graph_hadamard(H) -> bool:
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        return False
    n = H.shape[0]
    H = H.astype(np.int64)
    return bool(
        np.all(np.abs(H) == 1)
        and np.array_equal(H, H.T)
        and np.all(np.diag(H) == 1)
        and np.array_equal(H.T @ H, n * np.eye(n, dtype=np.int64))
    )


def hadamard_signature(H, plus: bool) -> SignatureMatrix:
    """``H - I`` (k = (n + sqrt n)/2) when ``plus``, else ``I - H`` (k = (n - sqrt n)/2)."""
    if not is_graph_hadamard(H):
        raise InvalidInput("matrix is not a graph Hadamard")
    H = np.asarray(H, dtype=np.int64)
    eye = np.eye(H.shape[0], dtype=np.int64)
    return SignatureMatrix(H - eye if plus else eye - H)


def basis_repetition(k: int) -> AnalysisOperator:
    """Uniform (2k, k)-frame: an orthonormal basis listed twice, scaled by 1/sqrt(2)."""
    if k < 1:
        raise InvalidParameters(f"k must be positive, got {k}")
    eye = np.eye(k)
    return AnalysisOperator(np.vstack([eye, eye]) / math.sqrt(2))
