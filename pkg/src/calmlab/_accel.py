"""Numba backend switch for the hot numeric kernels.

Every performance-sensitive inner loop in this package exists twice: a
numba ``@njit`` kernel and a pure-numpy fallback. The fallback is selected
when numba is unavailable or when the environment variable
``CALMLAB_NUMBA`` is set to ``0``/``false``/``off``. ``benchmarks/``
compares the two paths.
"""

import os

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False

_FALSEY = {"0", "false", "off", "no"}


def numba_enabled() -> bool:
    """True when jitted kernels should be used (env checked per call)."""
    if not HAS_NUMBA:
        return False
    return os.environ.get("CALMLAB_NUMBA", "1").strip().lower() not in _FALSEY


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    if HAS_NUMBA:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)

    def _noop(fn):
        return fn

    return _noop
