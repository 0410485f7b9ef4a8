"""Hot loops of the exact oracles, compiled when available.

The Cython module is used if it was built and ``QUADFACTOR_PURE`` is not
set; otherwise the pure-Python module with identical contracts. The
compiled versions raise OverflowError rather than wrap; the wrappers here
retry in Python.
"""

import os

from . import _pykernels as py

try:
    if os.environ.get("QUADFACTOR_PURE"):
        raise ImportError("pure mode requested")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = py
    BACKEND = "python"


def _guarded(name):
    fast = getattr(_impl, name)
    slow = getattr(py, name)

    def call(*args):
        try:
            return int(fast(*args))
        except OverflowError:
            return int(slow(*args))

    call.__name__ = name
    call.__doc__ = slow.__doc__
    return call


det_bareiss = _guarded("det_bareiss")
rank_bareiss = _guarded("rank_bareiss")
rank_mod_p = _guarded("rank_mod_p")
signed_matchings = _guarded("signed_matchings")

__all__ = ["BACKEND", "det_bareiss", "rank_bareiss", "rank_mod_p", "signed_matchings", "py"]
