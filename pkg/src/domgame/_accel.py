"""Backend selection: numba-compiled kernels, or plain Python/numpy.

Set ``DOMGAME_DISABLE_NUMBA=1`` before import to force the fallback path.
"""
from __future__ import annotations

import os

try:
    import numba
    from numba import types as _nbtypes
    from numba.typed import Dict as _NbDict
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_disabled = os.environ.get("DOMGAME_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

USE_NUMBA = numba is not None and not _disabled
BACKEND = "numba" if USE_NUMBA else "python"


def njit(fn):
    """Compile ``fn`` with numba when enabled; otherwise return it unchanged."""
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def compile_now(fn):
    """Always compile (used by benchmarks to compare both paths)."""
    if numba is None:
        raise RuntimeError("numba is not installed")
    return numba.njit(cache=True, nogil=True)(fn)


def new_table(jitted: bool | None = None):
    """An int64 -> int64 map usable by the search kernel."""
    if USE_NUMBA if jitted is None else jitted:
        return _NbDict.empty(key_type=_nbtypes.int64, value_type=_nbtypes.int64)
    return {}
