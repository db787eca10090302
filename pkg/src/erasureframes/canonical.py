"""Canonical labeling of small vertex-colored graphs.

Individualization-refinement search: colour refinement to an equitable
ordered partition, branching on the first smallest non-singleton cell.
Branches whose refinement invariants fall below the best path so far are
cut, and automorphisms discovered from coinciding leaves prune both the
current subtree and sibling orbits.  Intended for graphs of a few dozen
vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class _Leaf:
    path: tuple[int, ...]
    key: tuple
    labeling: np.ndarray  # labeling[i] = vertex placed at position i


@dataclass
class CanonicalResult:
    certificate: bytes
    labeling: np.ndarray
    generators: list[np.ndarray] = field(default_factory=list)
    nodes: int = 0


def _renumber(values: np.ndarray) -> np.ndarray:
    _, inv = np.unique(values, return_inverse=True)
    return inv.reshape(-1)


class _Orbits:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


class _Search:
    def __init__(self, adj: np.ndarray):
        self.A = np.asarray(adj, dtype=bool)
        self.Af = self.A.astype(np.float64)
        self.n = self.A.shape[0]
        self.iu = np.triu_indices(self.n, 1)
        self.first: _Leaf | None = None
        self.best: _Leaf | None = None
        self.generators: list[np.ndarray] = []
        self.nodes = 0

    def refine(self, colors: np.ndarray) -> tuple[np.ndarray, bytes]:
        n = self.n
        r = int(colors.max()) + 1
        while True:
            onehot = np.zeros((n, r))
            onehot[np.arange(n), colors] = 1.0
            counts = (self.Af @ onehot).astype(np.int64)
            key = np.column_stack([colors, counts])
            rows, inv = np.unique(key, axis=0, return_inverse=True)
            inv = inv.reshape(-1)
            if len(rows) == r:
                sizes = np.bincount(colors, minlength=r)
                return colors, rows.tobytes() + sizes.tobytes()
            colors, r = inv, len(rows)

    def leaf(self, colors: np.ndarray, path, invs) -> int | None:
        labeling = np.argsort(colors, kind="stable")
        permuted = self.A[np.ix_(labeling, labeling)]
        cert = np.packbits(permuted[self.iu]).tobytes()
        lf = _Leaf(tuple(path), (tuple(invs), cert), labeling)
        if self.first is None:
            self.first = self.best = lf
            return None
        for ref in (self.first, self.best):
            if ref.key == lf.key:
                gamma = np.empty(self.n, dtype=np.int64)
                gamma[ref.labeling] = lf.labeling
                if not np.array_equal(gamma, np.arange(self.n)):
                    self.generators.append(gamma)
                common = 0
                while common < len(path) and path[common] == ref.path[common]:
                    common += 1
                return common
        if lf.key > self.best.key:
            self.best = lf
        return None

    def dfs(self, colors: np.ndarray, path: list[int], invs: list[bytes]) -> int | None:
        self.nodes += 1
        colors, inv = self.refine(colors)
        invs = invs + [inv]
        level = len(path)
        if self.best is not None:
            best_invs = self.best.key[0][: level + 1]
            if tuple(invs) < best_invs:
                return None
        sizes = np.bincount(colors)
        if len(sizes) == self.n:
            return self.leaf(colors, path, invs)

        nontrivial = np.flatnonzero(sizes > 1)
        target = nontrivial[np.argmin(sizes[nontrivial])]
        cell = np.flatnonzero(colors == target)
        explored: list[int] = []
        fixed = np.array(path, dtype=np.int64)
        for w in cell:
            w = int(w)
            if explored and self._same_orbit(w, explored, fixed):
                continue
            explored.append(w)
            child = colors * 2 + 1
            child[w] -= 1
            ret = self.dfs(_renumber(child), path + [w], invs)
            if ret is not None and ret < level:
                return ret
        return None

    def _same_orbit(self, w, explored, fixed) -> bool:
        gens = [g for g in self.generators if np.array_equal(g[fixed], fixed)]
        if not gens:
            return False
        orb = _Orbits(self.n)
        for g in gens:
            for a, b in enumerate(g):
                orb.union(a, int(b))
        rw = orb.find(w)
        return any(orb.find(x) == rw for x in explored)


def canonical_form(adj, colors=None) -> CanonicalResult:
    """Canonical adjacency bytes of a graph with an ordered initial colouring.

    Two (graph, colouring) pairs related by a colour-preserving isomorphism
    get identical certificates; the returned labeling lists the vertices in
    canonical order.
    """
    A = np.asarray(adj, dtype=bool)
    n = A.shape[0]
    if colors is None:
        colors = np.zeros(n, dtype=np.int64)
    colors = _renumber(np.asarray(colors))
    search = _Search(A)
    if n == 0:
        return CanonicalResult(b"", np.zeros(0, dtype=np.int64))
    search.dfs(colors, [], [])
    best = search.best
    return CanonicalResult(best.key[1], best.labeling, search.generators, search.nodes)
