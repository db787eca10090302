from itertools import combinations
from math import comb

import numpy as np
import pytest

from erasureframes.enumeration import colex_table, lex_smallest, map_blocks, plan_blocks


def _colex(n, r):
    return sorted(combinations(range(n), r), key=lambda s: s[::-1])


@pytest.mark.parametrize("n,r", [(5, 0), (5, 2), (7, 3), (9, 5), (4, 4), (3, 5)])
def test_colex_table(n, r):
    assert [tuple(x) for x in colex_table(n, r)] == _colex(n, r)


@pytest.mark.parametrize("n,m,rows", [(10, 4, 1000), (12, 6, 50), (9, 3, 1), (8, 8, 10), (8, 1, 3)])
def test_blocks_concatenate_to_colex(n, m, rows):
    plan = plan_blocks(n, m, max_rows=rows)
    got = [tuple(s) for b in plan.blocks for s in plan.subsets(b)]
    assert got == _colex(n, m)
    assert sum(b.count for b in plan.blocks) == plan.total == comb(n, m)


def test_plan_rejects_bad_m():
    with pytest.raises(ValueError):
        plan_blocks(5, 6)


def test_lex_smallest():
    rows = np.array([[2, 3], [0, 5], [0, 1], [1, 1]])
    assert lex_smallest(rows, 2).tolist() == [[0, 1], [0, 5]]


def _block_sum(payload, plan, block):
    return int(plan.subsets(block).sum()) * payload


def test_map_blocks_order_independent_of_workers():
    plan = plan_blocks(14, 5, max_rows=40)
    serial = map_blocks(_block_sum, 3, plan, plan.blocks, workers=1)
    parallel = map_blocks(_block_sum, 3, plan, plan.blocks, workers=3)
    assert serial == parallel
