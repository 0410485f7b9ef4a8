import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadfactor.diagonals import all_diagonals, good_diagonals, select_diagonal, trace_diagonal
from quadfactor.disk import bicolor, board_from_cells, is_board, parse_board
from quadfactor.errors import SurgeryError
from quadfactor.surgery import LEFT, RIGHT, cut_and_paste, plan_surgery, split_components
from quadfactor.universe import board_cells, fan_disk, random_disk


def test_domino_plan_removes_everything():
    d = parse_board("##")
    diag = trace_diagonal(d, (0, 0))
    plan = plan_surgery(d, diag)
    assert (plan.k, plan.k_prime) == (1, 1)
    assert sorted(plan.removed) == [0, 1]
    res = cut_and_paste(d, plan)
    assert res.ell == 0


def test_single_square_degenerate():
    d = parse_board("#")
    plan = plan_surgery(d, trace_diagonal(d, (0, 0)))
    assert (plan.k, plan.k_prime) == (1, 0)
    assert plan.removed == (0,)
    assert plan.zeta_l == plan.zeta_r == plan.zeta_l_plus == ()
    assert cut_and_paste(d, plan).ell == 0


def test_two_by_two_plan():
    d = parse_board("##\n##")
    plan = plan_surgery(d, trace_diagonal(d, (0, 0)))
    assert (plan.k, plan.k_prime) == (2, 1)
    assert len(plan.removed) == 3
    assert len(plan.right_squares) == 1
    res = cut_and_paste(d, plan)
    assert res.ell == 1 and len(res.components[0]) == 1


def test_two_by_three_leaves_domino():
    d = parse_board("###\n###")
    plan = plan_surgery(d, trace_diagonal(d, (0, 0)))
    assert (plan.k, plan.k_prime) == (2, 2)
    res = cut_and_paste(d, plan)
    assert res.ell == 1
    comp = res.components[0]
    assert len(comp) == 2 and is_board(comp)
    assert set(comp.lattice_cells()) <= set(d.lattice_cells())


def test_two_components():
    # T-tetromino: removing the stem and its neighbour leaves two separate squares
    d = parse_board("#\n##\n#")
    res = cut_and_paste(d, plan_surgery(d, select_diagonal(d)))
    assert res.ell == 2
    assert [len(c) for c in res.components] == [1, 1]
    # the H-shaped board also falls apart in two
    h = parse_board("#.#\n###\n#.#")
    res = cut_and_paste(h, plan_surgery(h, select_diagonal(h)))
    assert sorted(len(c) for c in res.components) == [1, 4]
    assert all(is_board(c) for c in res.components)


def test_bad_diagonal_refused():
    d = parse_board("##\n#.")
    bad = next(x for x in all_diagonals(d) if not x.good)
    with pytest.raises(SurgeryError):
        plan_surgery(d, bad)


def test_split_components_examples():
    one = split_components([("a", "b", "c", "d"), ("b", "e", "f", "c")])
    assert len(one) == 1
    two = split_components([("a", "b", "c", "d"), ("c", "e", "f", "g")])
    assert [len(x) for x in two] == [1, 1]


def test_split_unpinches_inside_a_component():
    # a strip of three squares whose ends share vertex d: d gets a second copy
    comps = split_components([("a", "b", "c", "d"), ("b", "e", "f", "c"), ("e", "g", "d", "f")])
    assert len(comps) == 1
    c = comps[0]
    assert c.counts().V == 8
    assert any(isinstance(v, str) and v.startswith("d~") for v in c.vertex_squares)


def _check(disk, diag):
    plan = plan_surgery(disk, diag)
    res = cut_and_paste(disk, plan)
    assert len(disk) - sum(len(c) for c in res.components) == plan.k + plan.k_prime
    colors = bicolor(disk).colors
    dc = colors[diag.squares[0]]
    assert all(colors[s] == dc for s in plan.diagonal.squares)
    assert all(colors[s] != dc for s in plan.left_squares)
    assert set(plan.sides) == set(range(len(disk))) - set(plan.diagonal.squares)
    assert all(plan.sides[s] == LEFT for s in plan.left_squares)
    assert all(plan.sides[s] == RIGHT for s in plan.right_squares)
    if plan.diagonal.balanced:
        assert plan.k_prime == plan.k
        if plan.k >= 2:
            assert len(plan.zeta_l_plus) == len(plan.zeta_l) + 2
    else:
        assert plan.k_prime == plan.k - 1
    assert len(plan.zeta_l) == len(plan.zeta_r) == (2 * plan.k - 1 if plan.k >= 2 else 0)
    covered = sorted(s for m in res.square_maps for s in m)
    assert covered == sorted(set(range(len(disk))) - set(plan.removed))
    assert (len(res.components) == 0) == (len(disk) <= 2)
    return res


@given(st.integers(0, 2**32), st.integers(1, 16))
def test_every_good_diagonal_on_random_disks(seed, n):
    d = random_disk(n, random.Random(seed))
    for diag in good_diagonals(d):
        _check(d, diag)


@given(st.sampled_from(board_cells(8)))
def test_board_closure(cells):
    d = board_from_cells(cells)
    diag = select_diagonal(d)
    res = _check(d, diag)
    for comp in res.components:
        assert is_board(comp)
        assert set(comp.lattice_cells()) <= set(d.lattice_cells())


def test_fan_disk_iterates_to_empty():
    stack = [fan_disk(6)]
    steps = 0
    while stack:
        d = stack.pop()
        res = cut_and_paste(d, plan_surgery(d, select_diagonal(d)))
        stack.extend(res.components)
        steps += 1
        assert steps <= 6
