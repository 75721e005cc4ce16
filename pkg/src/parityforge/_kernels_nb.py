"""numba-compiled hot kernels (same interface as _kernels_py).

Everything runs on int64; the only place 63-bit products appear is the
modular multiply, which widens to uint64 and falls back to shift-add
when the modulus passes 2^31.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

_U0 = np.uint64(0)
_U1 = np.uint64(1)

_kw = dict(cache=True, nogil=True)


@njit(**_kw)
def _mulmod(a, b, m):
    # 0 <= a, b < m < 2^63
    if m < 2147483648:
        return a * b % m
    ua = np.uint64(a)
    ub = np.uint64(b)
    um = np.uint64(m)
    res = _U0
    while ub > _U0:
        if ub & _U1:
            res = res + ua
            if res >= um:
                res = res - um
        ua = ua + ua
        if ua >= um:
            ua = ua - um
        ub = ub >> _U1
    return np.int64(res)


@njit(**_kw)
def _powmod(a, e, m):
    r = np.int64(1)
    a = a % m
    while e > 0:
        if e & 1:
            r = _mulmod(r, a, m)
        a = _mulmod(a, a, m)
        e >>= 1
    return r


@njit(**_kw)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(**_kw)
def _is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = 0
    while d & 1 == 0:
        d >>= 1
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = _powmod(a, d, n)
        if x == 1 or x == n - 1:
            continue
        ok = False
        for _ in range(r - 1):
            x = _mulmod(x, x, n)
            if x == n - 1:
                ok = True
                break
        if not ok:
            return False
    return True


@njit(**_kw)
def _brent(n):
    # nontrivial factor of a composite n
    if n % 2 == 0:
        return np.int64(2)
    c = np.int64(1)
    while True:
        y = np.int64(2)
        m = np.int64(128)
        g = np.int64(1)
        r = np.int64(1)
        q = np.int64(1)
        x = y
        ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (_mulmod(y, y, n) + c) % n
            k = np.int64(0)
            while k < r and g == 1:
                ys = y
                lim = min(m, r - k)
                for _ in range(lim):
                    y = (_mulmod(y, y, n) + c) % n
                    diff = x - y if x > y else y - x
                    q = _mulmod(q, diff, n)
                g = _gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = np.int64(1)
            while g == 1:
                ys = (_mulmod(ys, ys, n) + c) % n
                diff = x - ys if x > ys else ys - x
                g = _gcd(diff, n)
        if g != n:
            return g
        c += 1


@njit(**_kw)
def factor_stats(lo, hi, primes):
    n = hi - lo
    omega = np.zeros(n, np.int16)
    bigo = np.zeros(n, np.int16)
    d = np.ones(n, np.int64)
    rem = np.empty(n, np.int64)
    for i in range(n):
        rem[i] = lo + i
    top = hi - 1
    for pi in range(primes.size):
        p = primes[pi]
        if p > top // p:
            break
        for idx in range((-lo) % p, n, p):
            e = np.int64(0)
            while rem[idx] % p == 0:
                rem[idx] //= p
                e += 1
            omega[idx] += 1
            bigo[idx] += e
            d[idx] *= e + 1
    for i in range(n):
        if rem[i] > 1:
            omega[i] += 1
            bigo[i] += 1
            d[i] *= 2
    return omega, bigo, d


@njit(**_kw)
def _modinv(a, p):
    # p prime, 0 < a < p
    t, new_t = np.int64(0), np.int64(1)
    r, new_r = np.int64(p), np.int64(a)
    while new_r != 0:
        quot = r // new_r
        t, new_t = new_t, t - quot * new_t
        r, new_r = new_r, r - quot * new_r
    return t % p


@njit(**_kw)
def survivor_mask(a, b, lo, hi, primes):
    n = hi - lo
    alive = np.ones(n, np.bool_)
    for pi in range(primes.size):
        p = primes[pi]
        if a % p == 0:
            continue
        r = _mulmod((-b) % p, _modinv(a % p, p), p)
        for idx in range((r - lo) % p, n, p):
            alive[idx] = False
    return alive


@njit(**_kw)
def e2_split_batch(values):
    n = values.size
    ps = np.zeros(n, np.int64)
    qs = np.zeros(n, np.int64)
    for k in range(n):
        v = values[k]
        if v < 6 or _is_prime(v):
            continue
        # isqrt via float seed; compare by division so s*s never overflows
        s = np.int64(math.sqrt(v))
        while s > v // s:
            s -= 1
        while s + 1 <= v // (s + 1):
            s += 1
        if s * s == v:
            continue
        f = _brent(v)
        g = v // f
        if f != g and _is_prime(f) and _is_prime(g):
            ps[k] = min(f, g)
            qs[k] = max(f, g)
    return ps, qs
