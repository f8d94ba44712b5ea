import itertools

import numpy as np
import pytest

from conftest import model
from projline.abstract_line import FiniteLine, verify_axioms
from projline.errors import BoundExceeded
from projline.structures import search_structures


def brute_count(line, free):
    count = 0
    for values in itertools.product(range(line.m), repeat=len(free)):
        comp = line.comp.copy()
        for slot, v in zip(free, values):
            comp[slot] = v
        if verify_axioms(FiniteLine(line.ctx, line.points, comp), early_exit=True).passed:
            count += 1
    return count


@pytest.mark.parametrize("p, k, seed", [(3, 10, 0), (3, 10, 1), (3, 9, 2), (5, 5, 3)])
def test_search_matches_brute_force(p, k, seed):
    line = model(p)
    rng = np.random.default_rng(seed)
    flat = rng.choice(line.comp.size, size=k, replace=False)
    free = [tuple(int(v) for v in np.unravel_index(s, line.comp.shape)) for s in flat]
    partial = line.comp.astype(np.int64).copy()
    for slot in free:
        partial[slot] = -1
    result = search_structures(p, line.points, partial=partial)
    assert len(result.solutions) == brute_count(line, free)
    assert all(s == line for s in result.solutions)


def test_search_rejects_wrong_partial():
    line = model(3)
    partial = np.full(line.comp.shape, -1, dtype=np.int64)
    partial[0, 0, 0, 1, 1] = 1  # (-1)(-1) = -1 contradicts vertex multiplication
    assert search_structures(3, line.points, partial=partial).solutions == []


def test_search_gf3_unique():
    result = search_structures(3)
    assert len(result.solutions) == 1
    assert result.solutions[0] == model(3).renamed(["P0", "P1", "P2", "P3"])


def test_search_p5_count():
    """Six tables: one per ordering of the points modulo PGL(2, 5)."""
    result = search_structures(5, model(5).points)
    assert len(result.solutions) == 6
    assert model(5) in result.solutions
    for s in result.solutions:
        assert verify_axioms(s).passed


def test_search_bound():
    with pytest.raises(BoundExceeded):
        search_structures(7)
