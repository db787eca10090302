"""Erasure errors of Parseval frames, their bounds, and reconstruction.

Erasing the coordinates in ``S`` leaves the error operator ``V* D V`` whose
norm is the top eigenvalue of the principal submatrix ``P[S, S]`` of the
Grammian.  ``e_m_inf`` is the largest such norm over all m-subsets and
``e_m_p`` its l^p mean.

For a 2-uniform frame ``P[S, S] = (k/n) I + c Q[S, S]`` and the spectrum of
``Q[S, S]`` does not change when the induced graph is switched.  The
accelerated evaluator therefore switches every subset so that its first
vertex is isolated, packs the remaining adjacency bits into an integer key
and looks the eigenvalue up in a memo table.  The direct evaluator calls
``eigvalsh`` on every compression and serves as the oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from . import spectra
from .constructions import basis_repetition, is_prime, paley_conference
from .enumeration import BlockPlan, lex_smallest, map_blocks, plan_blocks
from .errors import (
    BudgetExceeded,
    InvalidInput,
    InvalidParameters,
    NotReconstructible,
    NotTwoUniform,
    NotUniform,
    Unavailable,
)
from .frames import (
    AnalysisOperator,
    GrammianProjection,
    SignatureMatrix,
    c_nk,
    frame_from_signature,
    grammian,
    grammian_from_signature,
    signature_from_grammian,
)
from .seidel import count_E3_formula

DEFAULT_BUDGET = 10**8
TIE_TOL = 1e-9
SATURATION_TOL = 1e-9
WORST_SETS_LIMIT = 16
RECONSTRUCT_MARGIN = 1e-10
CHUNK_ROWS = 1 << 16
MEMO_MAX_BITS = 22


@dataclass(frozen=True)
class ErasureSet:
    """Erased coordinates, 1-based and strictly ascending."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise InvalidInput(f"erasure indices must be strictly ascending: {idx}")
        if idx and idx[0] < 1:
            raise InvalidInput(f"erasure indices are 1-based, got {idx[0]}")
        object.__setattr__(self, "indices", idx)

    @property
    def m(self) -> int:
        return len(self.indices)

    def check(self, n: int) -> "ErasureSet":
        if self.indices and self.indices[-1] > n:
            raise InvalidInput(f"erasure index {self.indices[-1]} exceeds n = {n}")
        return self

    def zero_based(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=np.int64) - 1

    @classmethod
    def from_zero_based(cls, idx) -> "ErasureSet":
        return cls(tuple(int(i) + 1 for i in idx))


@dataclass(frozen=True)
class ErasureReport:
    n: int
    k: int
    m: int
    p: float
    value: float
    worst_sets: tuple[ErasureSet, ...] = ()
    worst_count: int = 0
    subsets_examined: int = 0
    total_subsets: int = 0
    exact: bool = True
    bound_basic: float | None = None
    bound_refined: float | None = None
    saturated_basic: bool | None = None
    method: str = "direct"

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "p": "inf" if math.isinf(self.p) else self.p,
            "value": self.value,
            "worst_sets": [list(s.indices) for s in self.worst_sets],
            "worst_count": self.worst_count,
            "subsets_examined": self.subsets_examined,
            "total_subsets": self.total_subsets,
            "exact": self.exact,
            "bound_basic": self.bound_basic,
            "bound_refined": self.bound_refined,
            "saturated_basic": self.saturated_basic,
            "method": self.method,
        }


# ---------------------------------------------------------------- bounds


def bound_basic(n: int, k: int, m: int) -> float:
    return k / n + (m - 1) * c_nk(n, k)


def bound_refined(n: int, k: int, m: int) -> float:
    """Bound valid when no m vertices induce a complete bipartite graph."""
    if m < 3:
        raise InvalidParameters(f"the refined bound needs m >= 3, got {m}")
    return k / n + c_nk(n, k) * (m / 2 - 2 + math.sqrt(m * m / 4 + m - 3))


def bound_max_bipartite_size(n: int, k: int) -> int:
    """Largest m for which an m-vertex induced complete bipartite graph may exist."""
    if not (1 <= k < n):
        raise InvalidParameters(f"need 1 <= k < n, got ({n}, {k})")
    # floor(1 + sqrt(a/b)) = 1 + isqrt(a // b), exactly
    third = 1 + math.isqrt((n - k) * (n - 1) // k)
    return min(k, n - k, third)


def full_erasure_threshold(n: int, k: int) -> int:
    return n - k + 1


def e_3_inf_two_uniform(n: int, k: int) -> float:
    if not (1 <= k < n - 1):
        raise InvalidParameters(f"need 1 <= k < n - 1, got ({n}, {k})")
    return k / n + 2 * c_nk(n, k)


def e_3_p_closed(n: int, k: int, p: float) -> float:
    """l^p mean over triples from the counts of even and odd triples."""
    if not (1 <= k < n - 1):
        raise InvalidParameters(f"need 1 <= k < n - 1, got ({n}, {k})")
    e3 = count_E3_formula(n, k)
    total = math.comb(n, 3)
    c = c_nk(n, k)
    s = (e3 * (k / n + 2 * c) ** p + (total - e3) * (k / n + c) ** p) / total
    return s ** (1 / p)


# ---------------------------------------------------------------- evaluation


def _as_grammian(P) -> np.ndarray:
    if isinstance(P, GrammianProjection):
        return P.matrix
    if isinstance(P, AnalysisOperator):
        return grammian(P).matrix
    if isinstance(P, SignatureMatrix):
        return grammian_from_signature(P).matrix
    return GrammianProjection(P).matrix


def _signature_or_none(P: np.ndarray) -> SignatureMatrix | None:
    try:
        return signature_from_grammian(P)
    except (NotUniform, NotTwoUniform):
        return None


def compression_norm(P, S: ErasureSet) -> float:
    M = _as_grammian(P)
    S.check(M.shape[0])
    if S.m == 0:
        raise InvalidInput("erasure set must be nonempty")
    idx = S.zero_based()
    return spectra.top_eigenvalue(M[np.ix_(idx, idx)])


@dataclass
class _Payload:
    P: np.ndarray
    m: int
    mode: str  # "inf" or "p"
    p: float
    adjacency: np.ndarray | None = None
    diag: float = 0.0
    c: float = 0.0
    memo: dict = field(default_factory=dict)


def _direct_values(pl: _Payload, S: np.ndarray) -> np.ndarray:
    out = np.empty(len(S))
    for lo in range(0, len(S), CHUNK_ROWS):
        rows = S[lo : lo + CHUNK_ROWS]
        sub = pl.P[rows[:, :, None], rows[:, None, :]]
        out[lo : lo + len(rows)] = np.linalg.eigvalsh(sub)[:, -1]
    return out


def _pairs(m: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(1, m) for b in range(a + 1, m)]


def _key_eigs(keys: np.ndarray, m: int) -> np.ndarray:
    """Top eigenvalue of the signature matrix encoded by each key."""
    M = np.ones((len(keys), m, m))
    for bit, (a, b) in enumerate(_pairs(m)):
        s = 1 - 2 * ((keys >> bit) & 1)
        M[:, a, b] = s
        M[:, b, a] = s
    M[:, np.arange(m), np.arange(m)] = 0
    return np.linalg.eigvalsh(M)[:, -1]


def _switching_keys(A: np.ndarray, S: np.ndarray) -> np.ndarray:
    m = S.shape[1]
    rel = [A[S[:, 0], S[:, a]] for a in range(m)]
    key = np.zeros(len(S), dtype=np.int64)
    for bit, (a, b) in enumerate(_pairs(m)):
        key |= (A[S[:, a], S[:, b]] ^ rel[a] ^ rel[b]).astype(np.int64) << bit
    return key


def _memo_values(pl: _Payload, S: np.ndarray) -> np.ndarray:
    m = pl.m
    if m <= 2:
        lam = np.zeros(len(S)) if m == 1 else np.ones(len(S))
        return pl.diag + pl.c * lam
    nbits = (m - 1) * (m - 2) // 2
    out = np.empty(len(S))
    for lo in range(0, len(S), CHUNK_ROWS * 8):
        rows = S[lo : lo + CHUNK_ROWS * 8]
        keys = _switching_keys(pl.adjacency, rows)
        if nbits <= MEMO_MAX_BITS:
            table = pl.memo.get("table")
            if table is None:
                table = pl.memo["table"] = np.full(1 << nbits, np.nan)
            lam = table[keys]
            miss = np.isnan(lam)
            if miss.any():
                new = np.unique(keys[miss])
                table[new] = _key_eigs(new, m)
                lam = table[keys]
        else:
            uniq, inv = np.unique(keys, return_inverse=True)
            lam = _key_eigs(uniq, m)[inv.reshape(-1)]
        out[lo : lo + len(rows)] = pl.diag + pl.c * lam
    return out


def _block_result(pl: _Payload, plan: BlockPlan, block):
    S = plan.subsets(block)
    vals = _memo_values(pl, S) if pl.adjacency is not None else _direct_values(pl, S)
    if pl.mode == "p":
        return float(np.sum(vals**pl.p))
    top = float(vals.max())
    near = vals >= top - TIE_TOL
    return top, int(near.sum()), lex_smallest(S[near], WORST_SETS_LIMIT)


def _prepare(P, m: int, accelerate: bool, mode: str, p: float):
    M = _as_grammian(P)
    n = M.shape[0]
    k = int(round(float(np.trace(M))))
    if not (1 <= m <= n):
        raise InvalidParameters(f"need 1 <= m <= n = {n}, got m = {m}")
    Q = _signature_or_none(M)
    pl = _Payload(M, m, mode, p)
    method = "direct"
    if accelerate and Q is not None:
        pl.adjacency = Q.entries == -1
        pl.diag = k / n
        pl.c = c_nk(n, k)
        method = "switching-memo"
    return M, n, k, Q, pl, method


def _budgeted_blocks(plan: BlockPlan, budget: int):
    chosen, used = [], 0
    for b in plan.blocks:
        if used + b.count > budget:
            return chosen, used, False
        chosen.append(b)
        used += b.count
    return chosen, used, True


def e_m_inf(P, m: int, budget: int = DEFAULT_BUDGET, accelerate: bool = True,
            workers: int = 1) -> ErasureReport:
    """Worst-case erasure error over all m-subsets, with the maximizing sets.

    ``worst_sets`` lists the lexicographically smallest maximizing subsets
    (ties within 1e-9) and ``worst_count`` how many there are in total.
    The result does not depend on ``workers``.
    """
    M, n, k, Q, pl, method = _prepare(P, m, accelerate, "inf", math.inf)
    plan = plan_blocks(n, m)
    blocks, used, complete = _budgeted_blocks(plan, budget)
    results = map_blocks(_block_result, pl, plan, blocks, workers)

    value, count, worst = -math.inf, 0, np.zeros((0, m), dtype=np.int64)
    if results:
        value = max(r[0] for r in results)
        hits = [r for r in results if r[0] >= value - TIE_TOL]
        count = sum(r[1] for r in hits)
        worst = lex_smallest(np.concatenate([r[2] for r in hits]), WORST_SETS_LIMIT)

    report = ErasureReport(
        n=n, k=k, m=m, p=math.inf, value=value,
        worst_sets=tuple(ErasureSet.from_zero_based(r) for r in worst),
        worst_count=count, subsets_examined=used, total_subsets=plan.total,
        exact=complete, method=method,
    )
    if Q is not None and m >= 2:
        bb = bound_basic(n, k, m)
        report = replace(
            report,
            bound_basic=bb,
            bound_refined=bound_refined(n, k, m) if m >= 3 else None,
            saturated_basic=bool(abs(value - bb) <= SATURATION_TOL),
        )
    if not complete:
        raise BudgetExceeded(
            f"C({n},{m}) = {plan.total} subsets exceed the budget of {budget}", report
        )
    return report


def e_m_p(P, m: int, p: float, budget: int = DEFAULT_BUDGET, accelerate: bool = True,
          workers: int = 1) -> ErasureReport:
    """l^p mean of the erasure error over all m-subsets; ``p = inf`` gives ``e_m_inf``."""
    if math.isinf(p):
        return e_m_inf(P, m, budget, accelerate, workers)
    if not p >= 1:
        raise InvalidParameters(f"need p >= 1, got {p}")
    M, n, k, Q, pl, method = _prepare(P, m, accelerate, "p", float(p))
    plan = plan_blocks(n, m)
    blocks, used, complete = _budgeted_blocks(plan, budget)
    sums = map_blocks(_block_result, pl, plan, blocks, workers)
    denom = used if not complete else plan.total
    value = (math.fsum(sums) / denom) ** (1 / p) if denom else math.nan
    report = ErasureReport(
        n=n, k=k, m=m, p=float(p), value=value, subsets_examined=used,
        total_subsets=plan.total, exact=complete, method=method,
    )
    if Q is not None and m >= 2:
        report = replace(report, bound_basic=bound_basic(n, k, m),
                         bound_refined=bound_refined(n, k, m) if m >= 3 else None)
    if not complete:
        raise BudgetExceeded(
            f"C({n},{m}) = {plan.total} subsets exceed the budget of {budget}", report
        )
    return report


# ---------------------------------------------------------------- coding


def _operator(V) -> np.ndarray:
    if isinstance(V, AnalysisOperator):
        return V.matrix
    if isinstance(V, SignatureMatrix):
        return frame_from_signature(V).matrix
    return AnalysisOperator(V).matrix


def encode(V, x) -> np.ndarray:
    return _operator(V) @ np.asarray(x, dtype=float)


def erase(y, S: ErasureSet) -> np.ndarray:
    y = np.array(y, dtype=float, copy=True)
    S.check(len(y))
    y[S.zero_based()] = 0.0
    return y


def erasure_error(V, S: ErasureSet) -> float:
    """``||V* D V||`` for D supported on ``S`` (0 for no erasures)."""
    M = _operator(V)
    S.check(M.shape[0])
    if S.m == 0:
        return 0.0
    rows = M[S.zero_based()]
    G = rows.T @ rows
    return spectra.top_eigenvalue((G + G.T) / 2)


def reconstruct(V, S: ErasureSet, y_erased) -> tuple[np.ndarray, float]:
    """Exact recovery from the surviving coefficients.

    Returns ``(x_hat, ||L||)`` where ``L`` is the minimal-norm left inverse
    of the surviving rows, so ``||L|| = 1/t_min``.
    """
    M = _operator(V)
    n = M.shape[0]
    S.check(n)
    e = erasure_error(M, S)
    if e >= 1 - RECONSTRUCT_MARGIN:
        raise NotReconstructible(f"erasure error {e} leaves the surviving rows rank deficient")
    keep = np.setdiff1d(np.arange(n), S.zero_based())
    L, t_min = spectra.minimal_left_inverse(M[keep])
    x_hat = L @ np.asarray(y_erased, dtype=float)[keep]
    return x_hat, 1.0 / t_min


def approx_reconstruct(V, y_erased) -> np.ndarray:
    """``V* y``: the error ``x - V* E V x`` has norm at most the erasure error."""
    return _operator(V).T @ np.asarray(y_erased, dtype=float)


# ---------------------------------------------------------------- p = 2 reversal


@dataclass(frozen=True)
class ReversalReport:
    k: int
    n: int
    p: float
    threshold: float
    two_uniform_p2: float
    repetition_p2: float
    two_uniform_p: float
    repetition_p: float

    @property
    def two_uniform_worse_at_2(self) -> bool:
        return self.two_uniform_p2 > self.repetition_p2

    @property
    def reversed_at_p(self) -> bool:
        return self.two_uniform_p < self.repetition_p


def _two_uniform_2k(k: int) -> np.ndarray:
    if k == 1:
        return np.full((2, 1), 1 / math.sqrt(2))
    p = 2 * k - 1
    if not (is_prime(p) and p % 4 == 1):
        raise Unavailable(f"no conference construction for (n, k) = ({2 * k}, {k})")
    return frame_from_signature(paley_conference(p)).matrix


def reversal_threshold(n: int, k: int) -> float:
    return 2 + math.sqrt(5 * k * (n - 1) / (n - k))


def compare_p2_reversal(k: int, p: float = 30.0) -> ReversalReport:
    """Two-erasure errors of a 2-uniform (2k, k) frame against an orthonormal basis listed twice."""
    V2u = _two_uniform_2k(k)
    Vrep = basis_repetition(k).matrix
    n = 2 * k

    def err(V, q):
        return e_m_p(V @ V.T, 2, q, accelerate=False).value

    return ReversalReport(
        k=k, n=n, p=float(p), threshold=reversal_threshold(n, k) if k < n - 1 else math.nan,
        two_uniform_p2=err(V2u, 2), repetition_p2=err(Vrep, 2),
        two_uniform_p=err(V2u, p), repetition_p=err(Vrep, p),
    )


def erasure_sets(n: int, m: int) -> Sequence[ErasureSet]:
    """All m-subsets in colex order (small cases only)."""
    plan = plan_blocks(n, m)
    return [ErasureSet.from_zero_based(r) for b in plan.blocks for r in plan.subsets(b)]
