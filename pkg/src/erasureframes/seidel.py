"""Graphs in Seidel form: switching, two-graphs and complete bipartite search.

A signature matrix ``Q`` is read as the Seidel adjacency matrix of a graph:
``q_ij = -1`` for adjacent vertices and ``+1`` for distinct non-adjacent
ones.  Switching a vertex set ``S`` conjugates ``Q`` by the diagonal sign
matrix that is ``-1`` on ``S``.  Vertices are 0-based throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

import numpy as np

from .canonical import canonical_form, _Orbits
from .enumeration import colex_table
from .errors import InvalidParameters, NotStronglyRegular, SizeLimit
from .frames import SignatureMatrix

CERTIFICATE_MAX_N = 40
MIN_SWITCHING_MAX_M = 20


@dataclass(frozen=True, eq=False)
class SeidelGraph:
    adjacency: np.ndarray

    def __post_init__(self):
        A = np.array(self.adjacency, dtype=bool, copy=True)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"adjacency must be square, got {A.shape}")
        if np.any(np.diag(A)) or not np.array_equal(A, A.T):
            raise ValueError("adjacency must be symmetric without loops")
        A.setflags(write=False)
        object.__setattr__(self, "adjacency", A)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def __eq__(self, other):
        if not isinstance(other, SeidelGraph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash(self.adjacency.tobytes())

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[v])

    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def induced(self, vertices: Iterable[int]) -> "SeidelGraph":
        idx = np.asarray(sorted(vertices), dtype=np.int64)
        return SeidelGraph(self.adjacency[np.ix_(idx, idx)])

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SeidelGraph":
        A = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            A[u, v] = A[v, u] = True
        return cls(A)

    @classmethod
    def edgeless(cls, n: int) -> "SeidelGraph":
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def complete(cls, n: int) -> "SeidelGraph":
        return cls(~np.eye(n, dtype=bool))

    @classmethod
    def complete_bipartite(cls, r: int, s: int) -> "SeidelGraph":
        A = np.zeros((r + s, r + s), dtype=bool)
        A[:r, r:] = True
        A[r:, :r] = True
        return cls(A)


@dataclass(frozen=True)
class TwoGraph:
    n: int
    coherent_triples: frozenset

    @cached_property
    def as_array(self) -> np.ndarray:
        """Coherent triples as ascending rows, sorted lexicographically."""
        if not self.coherent_triples:
            return np.zeros((0, 3), dtype=np.int64)
        return np.array(sorted(self.coherent_triples), dtype=np.int64)

    def relabeled(self, perm) -> "TwoGraph":
        """The two-graph of ``relabel(G, perm)``."""
        T = np.sort(np.asarray(perm)[self.as_array], axis=1)
        return TwoGraph(self.n, frozenset(map(tuple, T.tolist())))

    def satisfies_even_axiom(self) -> bool:
        """Every 4-subset contains an even number of coherent triples."""
        for quad in combinations(range(self.n), 4):
            inside = sum(1 for t in combinations(quad, 3) if t in self.coherent_triples)
            if inside % 2:
                return False
        return True


@dataclass(frozen=True)
class SRGReduction:
    n_minus_1: int
    v: int
    p: int
    q: int
    c: int


@dataclass(frozen=True)
class BipartiteSearchResult:
    max_size: int
    witness: tuple[int, ...]
    partition: tuple[tuple[int, ...], tuple[int, ...]]
    exhausted_to: int
    complete: bool
    nodes: int


def graph_from_signature(Q: SignatureMatrix) -> SeidelGraph:
    return SeidelGraph(Q.entries == -1)


def signature_from_graph(G: SeidelGraph) -> SignatureMatrix:
    Q = 1 - 2 * G.adjacency.astype(np.int64)
    np.fill_diagonal(Q, 0)
    return SignatureMatrix(Q)


def switch(G: SeidelGraph, S: Iterable[int]) -> SeidelGraph:
    """Flip every edge and non-edge between ``S`` and its complement."""
    side = np.zeros(G.n, dtype=bool)
    side[list(S)] = True
    flip = side[:, None] ^ side[None, :]
    return SeidelGraph(G.adjacency ^ flip)


def relabel(G: SeidelGraph, perm) -> SeidelGraph:
    """Graph in which old vertex ``i`` is renamed ``perm[i]``."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    return SeidelGraph(G.adjacency[np.ix_(inv, inv)])


def isolate_vertex(G: SeidelGraph, omega: int) -> SeidelGraph:
    """Switch on the neighbourhood of ``omega`` so that it becomes isolated."""
    return switch(G, G.neighbors(omega))


def triples(n: int) -> np.ndarray:
    return colex_table(n, 3).astype(np.int64)


def _odd_triples(G: SeidelGraph) -> tuple[np.ndarray, np.ndarray]:
    T = triples(G.n)
    A = G.adjacency
    if len(T) == 0:
        return T, np.zeros(0, dtype=bool)
    edges = (
        A[T[:, 0], T[:, 1]].astype(np.int8)
        + A[T[:, 0], T[:, 2]]
        + A[T[:, 1], T[:, 2]]
    )
    return T, (edges % 2 == 1)


def two_graph(G: SeidelGraph) -> TwoGraph:
    T, odd = _odd_triples(G)
    return TwoGraph(G.n, frozenset(map(tuple, T[odd].tolist())))


def count_E3_O3(G: SeidelGraph) -> tuple[int, int]:
    """(even, odd) edge-count triples; the even ones are the complete bipartite triples."""
    _, odd = _odd_triples(G)
    o3 = int(odd.sum())
    return len(odd) - o3, o3


def regular_two_graph_alpha(G: SeidelGraph) -> int | None:
    """Common number of coherent triples through each pair, or ``None``."""
    n = G.n
    if n < 2:
        return None
    T, odd = _odd_triples(G)
    counts = np.zeros((n, n), dtype=np.int64)
    for a, b in ((0, 1), (0, 2), (1, 2)):
        np.add.at(counts, (T[odd, a], T[odd, b]), 1)
    vals = counts[np.triu_indices(n, 1)]
    if vals.min() != vals.max():
        return None
    return int(vals[0])


def srg_reduction(G: SeidelGraph, omega: int = 0) -> SRGReduction:
    """Isolate ``omega``, drop it, and measure the strongly regular parameters.

    ``v`` is the valency, ``c`` the common neighbours of adjacent vertices,
    ``p`` the vertices adjacent to one end of an edge but not the other,
    ``q`` the same count for a non-adjacent pair.  A graph without edges
    (or without non-edges) reports 0 for the vacuous counts.
    """
    H = isolate_vertex(G, omega)
    keep = [x for x in range(G.n) if x != omega]
    A = H.adjacency[np.ix_(keep, keep)]
    m = len(keep)
    if m == 0:
        return SRGReduction(0, 0, 0, 0, 0)
    deg = A.sum(axis=1)
    if deg.min() != deg.max():
        raise NotStronglyRegular("reduced graph is not regular")
    v = int(deg[0])
    Ai = A.astype(np.int64)
    common = Ai @ Ai
    only_first = Ai @ (1 - Ai - np.eye(m, dtype=np.int64))
    off = ~np.eye(m, dtype=bool)
    on_edges = A & off
    on_non = ~A & off

    def constant(values, what):
        if values.size == 0:
            return 0
        if values.min() != values.max():
            raise NotStronglyRegular(f"{what} is not constant")
        return int(values[0])

    c = constant(common[on_edges], "common neighbour count on edges")
    p = constant(only_first[on_edges], "one-sided neighbour count on edges")
    q = constant(only_first[on_non], "one-sided neighbour count on non-edges")
    if on_edges.any() and c + p + 1 != v:
        raise NotStronglyRegular("c + p + 1 != v")
    return SRGReduction(m, v, p, q, c)


def count_E3_formula(n: int, k: int) -> int:
    """Closed-form count of complete bipartite triples in a 2-uniform (n,k) graph."""
    if not (1 <= k < n):
        raise InvalidParameters(f"need 1 <= k < n, got ({n}, {k})")
    r1 = math.sqrt((n - k) * (n - 1) / k)
    r2 = math.sqrt(k * (n - 1) / (n - k))
    v = (n - 2 - r1 + r2) / 2
    c = v - 1 - (r1 - 1) * (r2 + 1) / 4
    vi, ci = round(v), round(c)
    if abs(v - vi) > 1e-9 or abs(c - ci) > 1e-9:
        raise InvalidParameters(f"(n, k) = ({n}, {k}) gives non-integer v = {v} or c = {c}")
    e3 = math.comb(n, 3) * 6 - vi * (n - 1) * ci - (n - 2 * vi + ci) * (n - 1) * vi * 3
    return e3 // 6


def is_complete_bipartite(G: SeidelGraph, vertices: Iterable[int] | None = None):
    """Test the induced subgraph on ``vertices`` (default: all).

    Returns ``(True, (V1, V2))`` or ``(False, None)``.  Sides may be empty;
    ``V2`` holds the lowest vertex together with its non-neighbours.
    """
    vs = sorted(range(G.n) if vertices is None else set(vertices))
    if not vs:
        return True, ((), ())
    A = G.adjacency
    u = vs[0]
    v1 = tuple(x for x in vs if A[u, x])
    v2 = tuple(x for x in vs if not A[u, x])
    i1 = np.asarray(v1, dtype=np.int64)
    i2 = np.asarray(v2, dtype=np.int64)
    if A[np.ix_(i1, i1)].any() or A[np.ix_(i2, i2)].any():
        return False, None
    if not A[np.ix_(i1, i2)].all():
        return False, None
    return True, (v1, v2)


def max_complete_bipartite(G: SeidelGraph, m_cap: int | None = None,
                           budget: int = 10**7) -> BipartiteSearchResult:
    """Largest vertex set (up to ``m_cap``) inducing a complete bipartite graph.

    Depth-first over vertices in ascending order, growing both sides of the
    bipartition; a branch is cut once its size plus all compatible later
    vertices cannot beat the incumbent.  The witness is the
    lexicographically least set of maximum size.  ``budget`` bounds the
    number of search nodes.
    """
    n = G.n
    cap = n if m_cap is None else m_cap
    if not (0 <= cap <= n):
        raise InvalidParameters(f"m_cap must lie in [0, {n}], got {m_cap}")
    nbr = [sum(1 << int(u) for u in G.neighbors(v)) for v in range(n)]
    full = (1 << n) - 1
    best = [0, ()]
    nodes = [0]

    class _Out(Exception):
        pass

    def dfs(chosen, cand1, cand2, last):
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Out
        if len(chosen) > best[0]:
            best[0], best[1] = len(chosen), tuple(chosen)
            if best[0] >= cap:
                raise _Out
        avail = (cand1 | cand2) >> (last + 1) << (last + 1)
        if len(chosen) + bin(avail).count("1") <= best[0]:
            return
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail ^= low
            if len(chosen) + 1 + bin(avail).count("1") <= best[0]:
                return
            if cand1 >> v & 1:
                dfs(chosen + [v], cand1 & ~nbr[v], cand2 & nbr[v], v)
            else:
                dfs(chosen + [v], cand1 & nbr[v], cand2 & ~nbr[v], v)
            if best[0] >= cap:
                return

    complete = True
    try:
        if cap > 0:
            dfs([], full, full, -1)
    except _Out:
        complete = best[0] >= cap
    size, witness = best
    ok, part = is_complete_bipartite(G, witness)
    assert ok
    exhausted = cap if complete else size
    return BipartiteSearchResult(size, witness, part, exhausted, complete, nodes[0])


def min_switching_edges(G: SeidelGraph) -> int:
    """Fewest edges over the switching class, by brute force (vertex 0 never switched)."""
    m = G.n
    if m > MIN_SWITCHING_MAX_M:
        raise SizeLimit(f"brute force over switchings is limited to {MIN_SWITCHING_MAX_M} vertices")
    if m < 2:
        return 0
    Q = 1.0 - 2.0 * G.adjacency
    np.fill_diagonal(Q, 0.0)
    pairs = m * (m - 1) // 2
    best = pairs
    total = 1 << (m - 1)
    step = 1 << 15
    bits = np.arange(m - 1)
    for start in range(0, total, step):
        masks = np.arange(start, min(total, start + step))
        X = np.ones((len(masks), m))
        X[:, 1:] -= 2 * ((masks[:, None] >> bits) & 1)
        quad = np.einsum("ij,ij->i", X @ Q, X)
        edges = (pairs - quad / 2) / 2
        best = min(best, int(round(edges.min())))
    return best


def _k4_per_vertex(A: np.ndarray) -> np.ndarray:
    """Number of 4-cliques through each vertex."""
    out = np.zeros(A.shape[0], dtype=np.int64)
    Af = A.astype(np.float64)
    for x in range(A.shape[0]):
        nb = np.flatnonzero(A[x])
        if len(nb) < 3:
            continue
        S = Af[np.ix_(nb, nb)]
        out[x] = int(round(np.trace(S @ S @ S))) // 6
    return out


def switching_certificate(G: SeidelGraph) -> bytes:
    """Byte string equal for two graphs exactly when they are switching equivalent.

    For each vertex ``omega`` the graph is switched to isolate ``omega`` and
    the result is canonically labelled with ``omega`` in its own leading
    cell; the certificate is the smallest such labelling.  Only the vertices
    ``omega`` whose reduced graph maximizes an isomorphism invariant (the
    sorted 4-clique counts) are tried, and vertices in an orbit of an
    already treated one are skipped.
    """
    n = G.n
    if n > CERTIFICATE_MAX_N:
        raise SizeLimit(f"certificates are limited to {CERTIFICATE_MAX_N} vertices")
    header = n.to_bytes(2, "big")
    if n <= 2:
        return header
    reduced = {}
    invariants = {}
    for omega in range(n):
        A = isolate_vertex(G, omega).adjacency
        k4 = _k4_per_vertex(A)
        reduced[omega] = (A, k4)
        invariants[omega] = tuple(sorted(k4.tolist()))
    top = max(invariants.values())
    candidates = [w for w in range(n) if invariants[w] == top]

    generators: list[np.ndarray] = []
    done: list[tuple[int, bytes, np.ndarray]] = []
    best = None
    for omega in candidates:
        if done:
            orb = _Orbits(n)
            for g in generators:
                for a, b in enumerate(g):
                    orb.union(a, int(b))
            if any(orb.find(omega) == orb.find(w) for w, _, _ in done):
                continue
        A, k4 = reduced[omega]
        colors = np.where(np.arange(n) == omega, -1, k4)
        res = canonical_form(A, colors)
        generators.extend(res.generators)
        for w, cert, lab in done:
            if cert == res.certificate:
                gamma = np.empty(n, dtype=np.int64)
                gamma[lab] = res.labeling
                generators.append(gamma)
                break
        done.append((omega, res.certificate, res.labeling))
        if best is None or res.certificate < best:
            best = res.certificate
    return header + best
