"""Instance generators: fixed hole-free polyominoes and random general disks."""

from __future__ import annotations

import random
from typing import Iterator

from .disk import QuadDisk, _check_cells, board_from_cells
from .errors import BoardParseError

MAX_CELLS = 10


def _fixed_polyominoes(n: int) -> Iterator[tuple]:
    """Redelmeier's method: every fixed polyomino with n cells exactly once."""

    def allowed(c):
        return c[1] > 0 or (c[1] == 0 and c[0] >= 0)

    poly: list = []
    seen = {(0, 0)}

    def grow(untried: list):
        untried = list(untried)
        while untried:
            c = untried.pop()
            poly.append(c)
            if len(poly) == n:
                yield tuple(poly)
            else:
                x, y = c
                fresh = [
                    nb
                    for nb in ((x + 1, y), (x, y + 1), (x - 1, y), (x, y - 1))
                    if allowed(nb) and nb not in seen
                ]
                seen.update(fresh)
                yield from grow(untried + fresh)
                seen.difference_update(fresh)
            poly.pop()

    yield from grow([(0, 0)])


def _normalized(cells) -> tuple:
    mx = min(c[0] for c in cells)
    my = min(c[1] for c in cells)
    return tuple(sorted((x - mx, y - my) for x, y in cells))


def _hole_free(cells) -> bool:
    try:
        _check_cells(set(cells))
    except BoardParseError:
        return False
    return True


def board_cells(n: int) -> list[tuple]:
    """Hole-free fixed polyominoes with exactly n cells, as sorted cell tuples."""
    if not 1 <= n <= MAX_CELLS:
        raise ValueError(f"cell count must be in 1..{MAX_CELLS}, got {n}")
    out = {_normalized(p) for p in _fixed_polyominoes(n)}
    return sorted(c for c in out if _hole_free(c))


def enumerate_boards(n: int) -> Iterator[QuadDisk]:
    """Every simply connected polyomino with exactly n cells, up to translation."""
    for cells in board_cells(n):
        yield board_from_cells(cells)


def universe(max_cells: int) -> Iterator[QuadDisk]:
    """All boards with 1..max_cells cells, smallest first."""
    if not 1 <= max_cells <= MAX_CELLS:
        raise ValueError(f"cell count must be in 1..{MAX_CELLS}, got {max_cells}")
    for n in range(1, max_cells + 1):
        yield from enumerate_boards(n)


def random_disk(n: int, rng: random.Random, fill: float = 0.5) -> QuadDisk:
    """Grow a general quadriculated disk of n squares.

    Each step glues a square along one boundary edge, or, with probability
    ``fill`` when possible, into the notch at a boundary vertex lying on
    three squares. Vertices are ints; the results are often not boards.
    """
    squares = [(0, 1, 2, 3)]
    fresh = 4
    disk = QuadDisk(squares)
    while len(squares) < n:
        nxt = disk.boundary_next
        prev = {b: a for a, b in nxt.items()}
        notches = [v for v in disk.boundary_cycle if disk.degree(v) == 3]
        if notches and rng.random() < fill:
            v = rng.choice(notches)
            squares.append((nxt[v], v, prev[v], fresh))
            fresh += 1
        else:
            a = rng.choice(disk.boundary_cycle)
            squares.append((nxt[a], a, fresh, fresh + 1))
            fresh += 2
        disk = QuadDisk(squares)
    return disk


def fan_disk(n: int) -> QuadDisk:
    """n squares glued cyclically around a boundary vertex; not a board for n >= 4."""
    squares = []
    for i in range(n):
        squares.append(("c", f"p{i}", f"q{i}", f"p{i + 1}"))
    return QuadDisk(squares)


def slit_ring() -> QuadDisk:
    """The 8-cell ring around a missing cell, cut open along one edge.

    Its squares develop onto 8 distinct cells, yet two boundary edges land
    on the same segment, so it is not a board.
    """
    ring = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)]
    squares = []
    for x, y in ring:
        q = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
        if (x, y) in ((0, 0), (1, 0)):
            q = [("cut", 1, 1) if v == (1, 1) else v for v in q]
        if (x, y) == (0, 0):
            q = [("cut", 0, 1) if v == (0, 1) else v for v in q]
        squares.append(tuple(q))
    return QuadDisk(squares)
