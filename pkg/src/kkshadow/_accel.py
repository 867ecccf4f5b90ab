"""numba dispatch.

Kernels are written as plain Python over numpy arrays and compiled with
``njit`` when numba is importable and ``KKSHADOW_NO_JIT`` is unset (or "0").
Setting ``KKSHADOW_NO_JIT=1`` selects the interpreted / vectorised-numpy path
everywhere; the flag is read once at import time.
"""

from __future__ import annotations

import os

_flag = os.environ.get("KKSHADOW_NO_JIT", "").strip().lower()
NO_JIT_REQUESTED = _flag not in ("", "0", "false", "no")

try:
    import numba  # noqa: F401
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False
    _njit = None

USE_JIT = HAVE_NUMBA and not NO_JIT_REQUESTED


def jit(func):
    """Compile ``func`` with numba (nogil, cached) unless the no-JIT path is selected."""
    if not USE_JIT:
        func.py_func = func
        return func
    return _njit(cache=True, nogil=True)(func)


def backend_name() -> str:
    return "numba" if USE_JIT else "numpy"
