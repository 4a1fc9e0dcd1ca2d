"""Optional numba acceleration.

Set ``NOISETEMP_DISABLE_NUMBA=1`` to force the pure-numpy kernels, e.g. to
compare results or when numba is unavailable for the running interpreter.
"""
import os

_disabled = os.environ.get("NOISETEMP_DISABLE_NUMBA", "").strip().lower() in (
    "1", "true", "yes", "on")

try:
    if _disabled:
        raise ImportError
    from numba import njit as _njit
    HAVE_NUMBA = True
except ImportError:
    _njit = None
    HAVE_NUMBA = False


def njit(func):
    """``numba.njit(cache=True)`` when available, else return *func* unchanged."""
    if HAVE_NUMBA:
        return _njit(cache=True)(func)
    return func
