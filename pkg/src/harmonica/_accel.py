"""Numba toggle.

Set ``HARMONICA_DISABLE_NUMBA=1`` to run every kernel as plain Python over
numpy arrays.  The fallback is also used when numba cannot be imported.
Jitted kernels keep their Python source reachable as ``kernel.py_func``.
"""

import os

_disabled = os.environ.get("HARMONICA_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError
    import numba

    NUMBA_ENABLED = True
except ImportError:  # pragma: no cover - depends on environment
    numba = None
    NUMBA_ENABLED = False


def jit(fn):
    if NUMBA_ENABLED:
        return numba.njit(cache=True, nogil=True)(fn)
    fn.py_func = fn
    return fn
