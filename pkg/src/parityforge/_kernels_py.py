"""Pure numpy/python reference implementations of the hot kernels.

Same interface as _kernels_nb; selected when numba is unavailable or
PF_NO_NUMBA is set. Strided array updates do the sieving work, plain
python integers do the per-survivor confirmations.
"""

from __future__ import annotations

import math

import numpy as np

from .arith import _brent, is_prime


def factor_stats(lo: int, hi: int, primes: np.ndarray):
    """(omega, big_omega, d) arrays for the integers lo..hi-1 (lo >= 1).

    primes must contain every prime <= isqrt(hi-1).
    """
    n = hi - lo
    omega = np.zeros(n, np.int16)
    bigo = np.zeros(n, np.int16)
    d = np.ones(n, np.int64)
    rem = np.arange(lo, hi, dtype=np.int64)
    top = hi - 1
    for p in primes.tolist():
        if p * p > top:
            break
        start = (-lo) % p
        idx = np.arange(start, n, p)
        if idx.size == 0:
            continue
        e = np.ones(idx.size, np.int64)
        pe = p * p
        while pe <= top:
            sub = np.arange((-lo) % pe, n, pe)
            e[(sub - start) // p] += 1
            pe *= p
        omega[idx] += 1
        bigo[idx] += e.astype(np.int16)
        d[idx] *= e + 1
        rem[idx] //= p**e
    left = rem > 1
    omega[left] += 1
    bigo[left] += 1
    d[left] *= 2
    return omega, bigo, d


def survivor_mask(a: int, b: int, lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    """True at offsets l-lo where a*l+b has no prime factor in primes."""
    n = hi - lo
    alive = np.ones(n, bool)
    for p in primes.tolist():
        if a % p == 0:
            continue  # reduced form: p never divides its values
        r = (-b) * pow(a, -1, p) % p
        alive[(r - lo) % p :: p] = False
    return alive


def e2_split_batch(values: np.ndarray):
    """Split each value into (p, q) with p < q both prime, or (0, 0).

    Values are assumed coprime to every screened prime, so any qualifying
    value is a product of two distinct primes above the screen.
    """
    n = values.size
    ps = np.zeros(n, np.int64)
    qs = np.zeros(n, np.int64)
    for k in range(n):
        v = int(values[k])
        if v < 6 or is_prime(v):
            continue
        s = math.isqrt(v)
        if s * s == v:
            continue  # a square is never squarefree
        f = _brent(v)
        g = v // f
        if f != g and is_prime(f) and is_prime(g):
            ps[k], qs[k] = min(f, g), max(f, g)
    return ps, qs
