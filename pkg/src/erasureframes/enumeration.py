"""Colexicographic enumeration of m-subsets in fixed-size blocks.

The m-subsets of ``range(n)`` are split into blocks that share their
largest ``m - r`` elements (the block "top").  Inside a block the lower
``r`` elements run through a prefix of the colex table of r-subsets, so
concatenating the blocks in order reproduces global colex order.  Blocks
are the unit of work for the budget and for worker processes; callers
combine per-block results in block order, which keeps every reduction
independent of the worker count.
"""

from __future__ import annotations

import multiprocessing as mp
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable, Sequence

import numpy as np

MAX_BLOCK_ROWS = 1 << 21


@lru_cache(maxsize=32)
def colex_table(n: int, r: int) -> np.ndarray:
    """All r-subsets of ``range(n)`` as rows, in colex order."""
    if r == 0:
        out = np.zeros((1, 0), dtype=np.int16)
    elif r > n:
        out = np.zeros((0, r), dtype=np.int16)
    else:
        prev = colex_table(n - 1, r - 1)
        out = np.empty((comb(n, r), r), dtype=np.int16)
        row = 0
        for j in range(r - 1, n):
            cnt = comb(j, r - 1)
            out[row : row + cnt, : r - 1] = prev[:cnt]
            out[row : row + cnt, r - 1] = j
            row += cnt
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Block:
    index: int
    top: tuple[int, ...]
    count: int


@dataclass(frozen=True)
class BlockPlan:
    n: int
    m: int
    r: int
    blocks: tuple[Block, ...]

    @property
    def total(self) -> int:
        return comb(self.n, self.m)

    def subsets(self, block: Block) -> np.ndarray:
        """Rows of ascending 0-based indices for one block, in colex order."""
        lower = colex_table(self.n - (self.m - self.r), self.r)[: block.count]
        out = np.empty((block.count, self.m), dtype=np.int64)
        out[:, : self.r] = lower
        if self.m > self.r:
            out[:, self.r :] = block.top
        return out


def plan_blocks(n: int, m: int, max_rows: int = MAX_BLOCK_ROWS) -> BlockPlan:
    if not (0 <= m <= n):
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    r = m
    while r > 1 and comb(n - (m - r), r) > max_rows:
        r -= 1
    blocks = []
    if m == r:
        blocks.append(Block(0, (), comb(n, m)))
    else:
        for top in colex_table(n, m - r):
            t0 = int(top[0])
            if t0 < r:
                continue
            blocks.append(Block(len(blocks), tuple(int(t) for t in top), comb(t0, r)))
    return BlockPlan(n, m, r, tuple(blocks))


def lex_smallest(rows: np.ndarray, limit: int) -> np.ndarray:
    """The ``limit`` lexicographically smallest rows, sorted."""
    if len(rows) == 0:
        return rows
    order = np.lexsort(rows.T[::-1])
    return rows[order[:limit]]


_WORKER_STATE: dict = {}


def _init_worker(fn, payload):
    _WORKER_STATE["fn"] = fn
    _WORKER_STATE["payload"] = payload


def _run_chunk(args):
    plan, chunk = args
    fn = _WORKER_STATE["fn"]
    payload = _WORKER_STATE["payload"]
    return [fn(payload, plan, b) for b in chunk]


def map_blocks(
    fn: Callable,
    payload,
    plan: BlockPlan,
    blocks: Sequence[Block],
    workers: int = 1,
) -> list:
    """``[fn(payload, plan, b) for b in blocks]``, optionally across processes.

    ``fn`` must be a module-level function.  Results always come back in
    block order.
    """
    if workers <= 1 or len(blocks) <= 1:
        return [fn(payload, plan, b) for b in blocks]
    nchunks = min(len(blocks), workers * 4)
    chunks = [list(blocks[i::nchunks]) for i in range(nchunks)]
    ctx = mp.get_context("fork")
    with ProcessPoolExecutor(workers, mp_context=ctx, initializer=_init_worker,
                             initargs=(fn, payload)) as pool:
        parts = list(pool.map(_run_chunk, [(plan, c) for c in chunks]))
    results = [None] * len(blocks)
    pos = {b.index: i for i, b in enumerate(blocks)}
    for chunk, res in zip(chunks, parts):
        for b, r in zip(chunk, res):
            results[pos[b.index]] = r
    return results
