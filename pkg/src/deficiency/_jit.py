"""numba switch.

Set ``DEFICIENCY_NO_JIT=1`` to run every kernel through its numpy/Python
fallback. The flag is read once, at import time.
"""
import os

_FLAG = os.environ.get("DEFICIENCY_NO_JIT", "").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and _FLAG not in ("1", "true", "yes", "on")


def njit(func):
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)
    return func


def python_version(func):
    """The interpreted body of a possibly-jitted function."""
    return getattr(func, "py_func", func)
