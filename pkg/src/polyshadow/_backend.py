"""Backend selection for the compiled kernels.

Set ``POLYSHADOW_NO_NUMBA=1`` to force the pure-numpy code paths even when
numba is importable. The flag is read once, at import time.
"""
import os

_FLAG = os.environ.get("POLYSHADOW_NO_NUMBA", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError("numba disabled by POLYSHADOW_NO_NUMBA")
    import numba

    HAS_NUMBA = True
except ImportError:
    numba = None
    HAS_NUMBA = False


def njit(*args, **kwargs):
    """``numba.njit`` with caching on, or an identity decorator without numba."""
    if HAS_NUMBA:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def backend_name():
    return "numba" if HAS_NUMBA else "numpy"
