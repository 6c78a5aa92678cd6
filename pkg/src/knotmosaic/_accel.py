"""Choose between numba-compiled kernels and the pure-numpy fallbacks.

Set ``KNOTMOSAIC_NO_NUMBA=1`` to force the numpy path (also used when numba
is not importable).
"""
from __future__ import annotations

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and os.environ.get("KNOTMOSAIC_NO_NUMBA", "").strip() not in ("1", "true", "yes")


def njit(fn):
    """``numba.njit(cache=True)`` when numba is present, else the plain function."""
    if not HAVE_NUMBA:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
