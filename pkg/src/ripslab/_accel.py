"""Optional numba acceleration.

Set ``RIPSLAB_DISABLE_NUMBA=1`` in the environment to run every kernel as
plain Python (useful for debugging and for the benchmark baseline).
"""
import os

DISABLE_NUMBA = os.environ.get("RIPSLAB_DISABLE_NUMBA", "0").lower() in ("1", "true", "yes")

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and not DISABLE_NUMBA


def njit(func):
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)
    return func
