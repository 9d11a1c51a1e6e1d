"""Optional numba acceleration.

Kernels are written once in the numba-compatible subset of Python and
decorated with :func:`jit`.  Setting ``GDPERM_NO_NUMBA=1`` (or running
without numba installed) leaves them as plain Python functions operating
on numpy arrays.  The flag is read once at import time, so comparing the
two paths needs separate processes (see benchmarks/bench_clique.py).
"""

from __future__ import annotations

import logging
import os

_FLAG = "GDPERM_NO_NUMBA"


def _numba_wanted() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() not in ("1", "true", "yes", "on")


try:
    if not _numba_wanted():
        raise ImportError
    import numba

    logging.getLogger("numba").setLevel(logging.WARNING)
    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False


def jit(func):
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)
    return func
