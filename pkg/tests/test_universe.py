import random

import pytest

from quadfactor.disk import is_board
from quadfactor.universe import MAX_CELLS, board_cells, enumerate_boards, fan_disk, random_disk, universe

# Hole-free fixed polyominoes, counted by an independent brute force below for small n.
FROZEN_COUNTS = {1: 1, 2: 2, 3: 6, 4: 19, 5: 63, 6: 216, 7: 756, 8: 2684}


def _brute(n):
    """Grow every cell set by adding neighbours, keep translations distinct, drop holes."""
    shapes = {frozenset([(0, 0)])}
    for _ in range(n - 1):
        grown = set()
        for s in shapes:
            for x, y in s:
                for c in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                    if c not in s:
                        t = s | {c}
                        mx = min(p[0] for p in t)
                        my = min(p[1] for p in t)
                        grown.add(frozenset((p[0] - mx, p[1] - my) for p in t))
        shapes = grown

    def holes(s):
        xs = [p[0] for p in s]
        ys = [p[1] for p in s]
        box = {(x, y) for x in range(-1, max(xs) + 2) for y in range(-1, max(ys) + 2)}
        free = box - s
        seen = {(-1, -1)}
        todo = [(-1, -1)]
        while todo:
            x, y = todo.pop()
            for c in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if c in free and c not in seen:
                    seen.add(c)
                    todo.append(c)
        return len(seen) != len(free)

    return {tuple(sorted(s)) for s in shapes if not holes(s)}


@pytest.mark.parametrize("n", range(1, 8))
def test_counts_match_brute_force(n):
    got = board_cells(n)
    assert len(got) == FROZEN_COUNTS[n]
    assert set(got) == _brute(n)


def test_frozen_eight():
    assert len(board_cells(8)) == FROZEN_COUNTS[8]


def test_enumeration_examples():
    assert len(list(enumerate_boards(1))) == 1
    assert len(list(enumerate_boards(2))) == 2
    assert len(list(enumerate_boards(3))) == 6
    assert sum(1 for _ in universe(3)) == 9


def test_every_instance_is_a_board():
    for d in universe(6):
        assert is_board(d)


def test_order_is_deterministic():
    a = [d.squares for d in universe(5)]
    b = [d.squares for d in universe(5)]
    assert a == b


def test_range_checked():
    with pytest.raises(ValueError):
        board_cells(0)
    with pytest.raises(ValueError):
        list(universe(MAX_CELLS + 1))


def test_generators():
    rng = random.Random(3)
    assert len(random_disk(9, rng)) == 9
    assert not is_board(fan_disk(4))
    assert is_board(fan_disk(3))
