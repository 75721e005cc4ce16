"""Kernel dispatch: numba-compiled hot loops with a pure-numpy fallback.

The numba implementations are used when importable; set PF_NO_NUMBA=1 to
force the fallback. Both expose the same three entry points and produce
identical arrays; benchmarks/bench_kernels.py times one against the other.
"""

from __future__ import annotations

import math
import os

import numpy as np

_FALSY = {"", "0", "false", "no", "off"}


def _numba_disabled() -> bool:
    return os.environ.get("PF_NO_NUMBA", "").strip().lower() not in _FALSY


NUMBA_ACTIVE = False
if not _numba_disabled():
    try:
        from . import _kernels_nb as _impl

        NUMBA_ACTIVE = True
    except ImportError:
        from . import _kernels_py as _impl
else:
    from . import _kernels_py as _impl

factor_stats = _impl.factor_stats
survivor_mask = _impl.survivor_mask
e2_split_batch = _impl.e2_split_batch


def prime_array(limit: int) -> np.ndarray:
    """Primes <= limit as int64, by plain numpy sieve."""
    if limit < 2:
        return np.empty(0, np.int64)
    mask = np.ones(limit + 1, bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def prime_mask(lo: int, hi: int, base_primes: np.ndarray) -> np.ndarray:
    """Primality of each value in [lo, hi) given primes up to isqrt(hi-1)."""
    n = hi - lo
    mask = np.ones(n, bool)
    for v in (0, 1):
        if lo <= v < hi:
            mask[v - lo] = False
    top = hi - 1
    for p in base_primes.tolist():
        if p * p > top:
            break
        start = max(p * p, lo + (-lo) % p)
        mask[start - lo :: p] = False
    return mask
