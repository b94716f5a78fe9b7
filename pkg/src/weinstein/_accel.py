"""Numba toggle for the hot kernels.

The package ships two implementations of the inner interpolation loops:
a numba ``@njit`` version and a vectorized pure-numpy fallback.  The env
variable ``WEINSTEIN_USE_NUMBA`` selects the path at import time
(``"0"`` forces the numpy fallback); :func:`set_numba` flips it at
runtime, which the benchmark script uses to compare both paths in one
process.
"""

import os

try:
    import numba  # noqa: F401

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

_enabled = _HAVE_NUMBA and os.environ.get("WEINSTEIN_USE_NUMBA", "1") != "0"


def numba_available() -> bool:
    return _HAVE_NUMBA


def numba_enabled() -> bool:
    return _enabled


def set_numba(on: bool) -> None:
    """Enable/disable the numba kernels (no-op enable if numba is absent)."""
    global _enabled
    _enabled = bool(on) and _HAVE_NUMBA
