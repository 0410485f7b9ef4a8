import os
import subprocess
import sys

import numpy as np
import pytest

from quadfactor import _kernels
from quadfactor._kernels import _pykernels as py

compiled = pytest.importorskip("quadfactor._kernels._ckernels")


@pytest.mark.parametrize("seed", range(8))
def test_backends_agree(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    M = rng.integers(0, 2, (n, n)).astype(np.int64)
    R = rng.integers(-3, 4, (n, n + 2)).astype(np.int64)
    assert compiled.det_bareiss(M) == py.det_bareiss(M)
    assert compiled.rank_bareiss(R) == py.rank_bareiss(R)
    for p in (2, 3, 7):
        assert compiled.rank_mod_p(R, p) == py.rank_mod_p(R, p)
    assert compiled.signed_matchings(M) == py.signed_matchings(M)


def test_overflow_falls_back():
    M = (np.eye(12, dtype=np.int64) * 1000) + 1
    with pytest.raises(OverflowError):
        compiled.det_bareiss(M)
    assert _kernels.det_bareiss(M) == py.det_bareiss(M)


def test_pure_mode_switch():
    env = dict(os.environ, QUADFACTOR_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from quadfactor import _kernels; print(_kernels.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_empty_inputs():
    empty = np.zeros((0, 0), dtype=np.int64)
    assert _kernels.det_bareiss(empty) == 1
    assert _kernels.rank_bareiss(np.zeros((0, 3), dtype=np.int64)) == 0
