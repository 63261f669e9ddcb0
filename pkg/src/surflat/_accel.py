"""Numba acceleration plumbing.

The hot kernels (BFS, blossom matching, union-find sweeps) are written in
nopython-compatible style so the same source runs compiled or interpreted.
Set SURFLAT_NUMBA=0 to force the interpreted fallback; the benchmark in
benchmarks/bench_kernels.py compares the two paths.
"""

import os

try:
    import numba

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    NUMBA_AVAILABLE = False

NUMBA_ENABLED = NUMBA_AVAILABLE and os.environ.get("SURFLAT_NUMBA", "1").lower() not in (
    "0",
    "false",
    "off",
)


def jit_kernel(func):
    """Return a cached nopython-compiled version of func, or func itself.

    Compilation is skipped when numba is missing or SURFLAT_NUMBA=0, in
    which case the interpreted function is used as the fallback path.
    """
    if NUMBA_ENABLED:
        return numba.njit(cache=True)(func)
    return func
