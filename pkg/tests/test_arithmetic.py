import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadfactor import arithmetic as ar
from quadfactor.disk import bicolor, black_to_white_matrix, board_from_cells, parse_board
from quadfactor.factorization import ldu
from quadfactor.universe import board_cells, random_disk

from .oracles import brute_det, domino_tilings, perm_sign


def test_det_oracle_examples():
    assert ar.det_oracle([[1, 1], [1, 1]]) == 0
    assert ar.det_oracle(np.eye(3, dtype=np.int64)) == 1
    assert ar.det_oracle(np.zeros((0, 0), dtype=np.int64)) == 1
    with pytest.raises(ValueError):
        ar.det_oracle([[1, 2, 3]])


@pytest.mark.parametrize("seed", range(10))
def test_det_oracle_random_sign_matrices(seed):
    rng = np.random.default_rng(seed)
    M = rng.choice([-1, 1], size=(5, 5))
    assert ar.det_oracle(M) == ar.cofactor_det(M) == ar.leibniz_det(M) == brute_det(M.tolist())


def test_rank_oracle_examples(ref67):
    B, _ = ref67
    assert ar.rank_oracle([[1, 1], [1, 1]]) == 1
    assert ar.rank_oracle([[1, 1], [1, 1]], 2) == 1
    assert ar.rank_oracle(B) == 6
    assert ar.rank_oracle(B, 2) == 6
    assert ar.rank_oracle(B, 3) == 6
    assert ar.rank_oracle([[2]], 2) == 0
    with pytest.raises(ValueError):
        ar.rank_oracle(B, 4)


def test_signed_matchings_examples():
    assert ar.signed_matchings([[1, 1], [1, 1]]) == 0
    assert ar.signed_matchings([[1]]) == 1
    d = parse_board("###\n###")
    B = black_to_white_matrix(d)
    assert ar.signed_matchings(B) in (-1, 1)
    assert ar.count_matchings(B) == 3
    with pytest.raises(ValueError):
        ar.signed_matchings(np.eye(15, dtype=np.int64))
    with pytest.raises(ValueError):
        ar.signed_matchings(np.ones((2, 3), dtype=np.int64))


def test_two_by_three_tilings_signed_by_hand():
    d = parse_board("###\n###")
    col = bicolor(d)
    cells = d.lattice_cells()
    bl = {cells[s]: i for i, s in enumerate(col.black)}
    wl = {cells[s]: i for i, s in enumerate(col.white)}
    tilings = domino_tilings(cells)
    assert len(tilings) == 3
    total = 0
    for t in tilings:
        p = [None] * 3
        for a, b in t:
            if a in bl:
                p[bl[a]] = wl[b]
            else:
                p[bl[b]] = wl[a]
        total += perm_sign(p)
    assert total == ar.signed_matchings(black_to_white_matrix(d, col))


def test_smith_examples(ref67):
    B, _ = ref67
    assert ar.smith_normal_form(np.eye(2, 3, dtype=np.int64)).factors == (1, 1)
    assert ar.smith_normal_form([[2]]).factors == (2,)
    assert ar.smith_normal_form(B).factors == (1,) * 6
    assert ar.smith_normal_form([[2, 4], [6, 8]]).factors == (2, 4)
    assert ar.smith_normal_form([[0, 0]]).factors == ()


def test_det_and_rank_via_ldu_examples(ref67):
    assert ar.det_via_ldu(ldu(parse_board("##"))) == 1
    assert ar.det_via_ldu(ldu(parse_board("##\n##"))) == 0
    assert abs(ar.det_via_ldu(ldu(parse_board("###\n###")))) == 1
    assert ar.rank_via_ldu(ldu(parse_board("##"))) == 1
    assert ar.rank_via_ldu(ldu(parse_board("##\n##"))) == 1
    _, f = ref67
    assert ar.rank_via_ldu(f) == 6
    with pytest.raises(ValueError):
        ar.det_via_ldu(ldu(parse_board("###")))


def _check_solution(B, out, v):
    B = np.asarray(B)
    if out.solvable:
        assert all(isinstance(a, int) for a in out.x)
        assert (B @ np.array(out.x, dtype=object)).tolist() == list(v)
    else:
        c = np.array(out.witness, dtype=object)
        assert not any((c @ B).tolist())
        assert int(c @ np.array(v, dtype=object)) != 0


def test_solve_examples():
    out = ar.solve_integer(ldu(parse_board("##")), [5])
    assert out.x == (5,)
    d = parse_board("##\n##")
    B = black_to_white_matrix(d)
    f = ldu(d)
    bad = ar.solve_integer(f, [1, 0])
    assert not bad.solvable and bad.row is not None
    _check_solution(B, bad, [1, 0])
    good = ar.solve_integer(f, [2, 2])
    _check_solution(B, good, [2, 2])
    with pytest.raises(ValueError):
        ar.solve_integer(f, [1])


@given(st.integers(0, 2**32), st.integers(1, 16), st.integers(0, 2**16))
def test_solve_matches_rational_solver(seed, n, vseed):
    d = random_disk(n, random.Random(seed))
    col = bicolor(d)
    B = black_to_white_matrix(d, col)
    f = ldu(d, col)
    rng = random.Random(vseed)
    v = [rng.randint(-3, 3) for _ in range(col.b)]
    out = ar.solve_integer(f, v)
    rational = ar.rational_solve(B, v)
    assert out.solvable == (rational is not None)
    _check_solution(B, out, v)


def test_rational_solve():
    x = ar.rational_solve([[2, 0], [0, 4]], [1, 1])
    assert x == (Fraction(1, 2), Fraction(1, 4))
    assert ar.rational_solve([[1, 1], [1, 1]], [1, 0]) is None


@given(st.sampled_from(board_cells(8)))
def test_derived_quantities_on_boards(cells):
    d = board_from_cells(cells)
    col = bicolor(d)
    B = black_to_white_matrix(d, col)
    f = ldu(d, col)
    r = ar.rank_via_ldu(f)
    assert r == ar.rank_oracle(B) == ar.rank_oracle(B, 2) == ar.rank_oracle(B, 3)
    assert ar.smith_normal_form(B).free_cokernel
    if col.b == col.w:
        assert ar.det_via_ldu(f) == ar.det_oracle(B) == ar.signed_matchings(B)


def test_permutation_sign():
    assert ar.permutation_sign((0, 1, 2)) == 1
    assert ar.permutation_sign((1, 0, 2)) == -1
    assert ar.permutation_sign((1, 2, 0)) == 1
