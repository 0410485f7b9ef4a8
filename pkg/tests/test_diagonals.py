import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadfactor.diagonals import (
    Kind,
    all_diagonals,
    bad_end_bound,
    boundary_arcs,
    corners,
    excellent_diagonals,
    good_diagonals,
    is_excellent,
    minimal_arc_diagonals,
    select_diagonal,
    trace_diagonal,
)
from quadfactor.disk import board_from_cells, develop, parse_board
from quadfactor.errors import NotABoardError
from quadfactor.surgery import cut_and_paste, plan_surgery
from quadfactor.universe import board_cells, random_disk, slit_ring

from .oracles import arc, boundary_cycle, monotone

# A board with a good diagonal whose paste (left side fixed) does not embed.
TRAP = "##\n#\n##.#\n####"


def test_corners_counts():
    assert len(corners(parse_board("#"))) == 4
    assert corners(parse_board("##\n##")) == [(0, 0), (0, 2), (2, 0), (2, 2)]
    assert len(corners(parse_board("##\n#."))) == 5


def test_unit_square_diagonals():
    d = parse_board("#")
    diags = all_diagonals(d)
    assert len(diags) == 4
    assert all(x.k == 1 and x.good for x in diags)
    assert len(good_diagonals(d)) == 4
    assert len(excellent_diagonals(d)) == 4


def test_two_by_two_trace():
    d = parse_board("##\n##")
    diag = trace_diagonal(d, (0, 0))
    assert diag.vertices == ((0, 0), (1, 1), (2, 2))
    assert diag.kind is Kind.UNBALANCED
    assert len(good_diagonals(d)) == 4
    assert len(excellent_diagonals(d)) == 4


def test_two_by_three_trace():
    d = parse_board("###\n###")
    diag = trace_diagonal(d, (0, 0))
    assert diag.k == 2
    assert diag.end == (2, 2)
    assert diag.kind is Kind.BALANCED


def test_l_tromino_has_one_bad():
    d = parse_board("##\n#.")
    diags = all_diagonals(d)
    assert len(diags) == 5
    assert sum(not x.good for x in diags) == 1
    assert len(good_diagonals(d)) == 4


def test_trace_rejects_non_corner():
    d = parse_board("##")
    with pytest.raises(ValueError):
        trace_diagonal(d, (1, 0))


def test_excellent_requires_board():
    with pytest.raises(NotABoardError):
        excellent_diagonals(slit_ring())


def _oracle_excellent(cells, diag):
    """Monotone test on the boundary computed from the cells alone."""
    nxt = boundary_cycle(cells)
    return monotone(arc(nxt, diag.corner, diag.end)), monotone(arc(nxt, diag.end, diag.corner))


def test_trap_board_selection():
    d = parse_board(TRAP)
    cells = d.lattice_cells()
    dev = develop(d)
    flags = {}
    for diag in all_diagonals(d):
        ccw, cw = _oracle_excellent(cells, diag)
        assert is_excellent(d, diag, dev) == ccw
        assert is_excellent(d, diag.mirrored(), dev) == cw
        flags[diag.corner] = (diag.kind.value, ccw or cw)
    trap = trace_diagonal(d, (0, 0))
    assert trap.good and not flags[(0, 0)][1]
    res = cut_and_paste(d, plan_surgery(d, trap))
    assert any(c.lattice_cells() is None for c in res.components)
    chosen = select_diagonal(d)
    assert chosen.excellent and flags[chosen.corner][1]
    res = cut_and_paste(d, plan_surgery(d, chosen))
    assert all(c.lattice_cells() is not None for c in res.components)
    assert set().union(*(c.lattice_cells() for c in res.components)) <= set(cells)


@given(st.sampled_from(board_cells(7)))
def test_excellent_matches_cell_oracle(cells):
    d = board_from_cells(cells)
    dev = develop(d)
    lat = d.lattice_cells()
    for diag in all_diagonals(d):
        ccw, cw = _oracle_excellent(lat, diag)
        assert is_excellent(d, diag, dev) == ccw
        assert is_excellent(d, diag.mirrored(), dev) == cw
    ex = excellent_diagonals(d, dev)
    assert ex
    for e in ex:
        assert e.good
        assert d.is_boundary_edge(e.end, e.right[-1])


@given(st.integers(0, 2**32), st.integers(1, 18))
def test_diagonal_structure_on_random_disks(seed, n):
    d = random_disk(n, random.Random(seed))
    dev = develop(d)
    diags = all_diagonals(d)
    good = good_diagonals(d)
    assert len(good) >= 4
    assert len(diags) - len(good) <= bad_end_bound(d)
    assert bad_end_bound(d) == d.counts().boundary_degrees.get(1, 0) - 4
    for x in diags:
        assert len(d.vertex_squares[x.corner]) == 1
        assert all(v in d.interior_vertices for v in x.vertices[1:-1])
        assert d.is_boundary_vertex(x.end)
        assert len(set(x.vertices)) == x.k + 1
        pts = [dev.positions[v] for v in x.vertices]
        for axis in (0, 1):
            assert {b[axis] - a[axis] for a, b in zip(pts, pts[1:])} in ({1}, {-1})
        for i in range(x.k - 1):
            shared = set(d.squares[x.squares[i]]) & set(d.squares[x.squares[i + 1]])
            assert shared == {x.vertices[i + 1]}
        right, left = boundary_arcs(d, x)
        assert right[0] == left[0] == x.corner and right[-1] == left[-1] == x.end


def test_minimal_arcs_are_excellent_on_boards():
    for cells in board_cells(6):
        d = board_from_cells(cells)
        dev = develop(d)
        for m in minimal_arc_diagonals(d):
            assert is_excellent(d, m, dev)


def test_select_is_deterministic():
    d = parse_board("###\n##.\n###")
    a = select_diagonal(d)
    b = select_diagonal(parse_board("###\n##.\n###"))
    assert a == b
    assert a.excellent
