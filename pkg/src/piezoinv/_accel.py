"""Backend selection for the compiled kernels.

Set ``PIEZOINV_DISABLE_NUMBA=1`` to force the pure-numpy code paths. The flag
is read once, at import time.
"""

import logging
import os

_FALSY = {"", "0", "false", "no", "off"}

DISABLED = os.environ.get("PIEZOINV_DISABLE_NUMBA", "").strip().lower() not in _FALSY

try:
    import numba

    logging.getLogger("numba").setLevel(logging.WARNING)
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not DISABLED


def njit(func):
    """Compile ``func`` with numba when available, else return it unchanged.

    The compiled function is returned even when ``PIEZOINV_DISABLE_NUMBA`` is
    set, so the two paths can still be compared side by side; dispatch
    happens in :mod:`piezoinv.kernels`.
    """
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True)(func)


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
