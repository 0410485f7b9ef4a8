"""Exact L·D·U factorization of black-to-white matrices of quadriculated disks."""

from .arithmetic import (
    SolveOutcome,
    det_oracle,
    det_via_ldu,
    rank_oracle,
    rank_via_ldu,
    signed_matchings,
    smith_normal_form,
    solve_integer,
)
from .diagonals import Diagonal, Kind, excellent_diagonals, good_diagonals, select_diagonal, trace_diagonal
from .disk import (
    QuadDisk,
    bicolor,
    black_to_white_matrix,
    board_from_cells,
    build_complex,
    develop,
    is_board,
    load_disk,
    parse_board,
    parse_complex,
)
from .errors import BoardParseError, FactorizationError, InvalidDiskError, NotABoardError, QuadError, SurgeryError
from .factorization import LDUFactorization, is_defective_identity, ldu, step_factor, verify_factorization
from .surgery import cut_and_paste, plan_surgery
from .universe import enumerate_boards, universe

__version__ = "0.1.0"
