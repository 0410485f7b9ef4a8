"""Compare the compiled and pure-Python oracle kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Matrices are black-to-white matrices of random boards, so the timings
reflect the sizes the oracles actually see in the test universe.
"""

import argparse
import random
import sys
import timeit

import numpy as np

from quadfactor import _kernels
from quadfactor.disk import black_to_white_matrix, board_from_cells
from quadfactor.universe import board_cells


def sample_matrices(n_cells, count, seed):
    rng = random.Random(seed)
    pool = board_cells(n_cells)
    return [black_to_white_matrix(board_from_cells(rng.choice(pool))) for _ in range(count)]


def square_matrices(size, count, seed):
    rng = np.random.default_rng(seed)
    return [rng.integers(0, 2, (size, size)).astype(np.int64) for _ in range(count)]


def bench(label, fast, slow, mats, repeat):
    t_fast = min(timeit.repeat(lambda: [fast(M) for M in mats], number=1, repeat=repeat))
    t_slow = min(timeit.repeat(lambda: [slow(M) for M in mats], number=1, repeat=repeat))
    for M in mats:
        assert int(fast(M)) == int(slow(M)), label
    print(f"{label:<28} compiled {t_fast * 1e3:9.2f} ms   python {t_slow * 1e3:9.2f} ms   x{t_slow / t_fast:6.1f}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _kernels.BACKEND != "cython":
        print("compiled kernels are not built; run 'pip install -e . --no-build-isolation' first")
        return 1
    from quadfactor._kernels import _ckernels as c

    py = _kernels.py
    boards = sample_matrices(10, 200, 1)
    sq = square_matrices(24, 50, 2)
    small = square_matrices(9, 50, 3)
    bench("rank_bareiss (boards)", c.rank_bareiss, py.rank_bareiss, boards, args.repeat)
    bench("rank_mod_p p=3 (boards)", lambda M: c.rank_mod_p(M, 3), lambda M: py.rank_mod_p(M, 3), boards, args.repeat)
    bench("det_bareiss 24x24", c.det_bareiss, py.det_bareiss, sq, args.repeat)
    bench("signed_matchings 9x9", c.signed_matchings, py.signed_matchings, small, args.repeat)
    return 0


if __name__ == "__main__":
    sys.exit(main())
