"""Exact integer arithmetic on checked 64-bit values.

Primality is deterministic over the full range (Miller-Rabin with the
12-witness set that is exact below 3.3e24), factorization is trial
division below a small bound followed by Brent's cycle splitter, and the
congruence solver accepts non-coprime moduli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator

from .errors import Incompatible

MAX_VALUE = 2**63 - 1

# Deterministic witness set for n < 3,317,044,064,679,887,385,961,981.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _check_u63(x: int, what: str = "value") -> int:
    if not isinstance(x, int) or isinstance(x, bool):
        raise TypeError(f"{what} must be an int, got {type(x).__name__}")
    if x < 0:
        raise ValueError(f"{what} must be nonnegative, got {x}")
    if x > MAX_VALUE:
        raise OverflowError(f"{what} {x} exceeds the 64-bit range")
    return x


def is_prime(x: int) -> bool:
    """Deterministic primality for 0 <= x <= 2^63 - 1."""
    _check_u63(x)
    if x < 2:
        return False
    for p in _TRIAL_PRIMES:
        if x == p:
            return True
        if x % p == 0:
            return False
    d = x - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        y = pow(a, d, x)
        if y == 1 or y == x - 1:
            continue
        for _ in range(r - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


def _brent(n: int) -> int:
    # Deterministic Brent rho: returns a nontrivial factor of odd composite n.
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ascending (prime, exponent) pairs."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        last = 1
        for p, e in self.pairs:
            if p <= last or e < 1:
                raise ValueError(f"pairs must be ascending primes with e >= 1: {self.pairs}")
            last = p

    @property
    def value(self) -> int:
        return reduce(lambda acc, pe: acc * pe[0] ** pe[1], self.pairs, 1)

    @property
    def omega(self) -> int:
        return len(self.pairs)

    @property
    def big_omega(self) -> int:
        return sum(e for _, e in self.pairs)

    @property
    def divisor_count(self) -> int:
        return reduce(lambda acc, pe: acc * (pe[1] + 1), self.pairs, 1)

    def pattern(self) -> tuple[int, ...]:
        return tuple(sorted((e for _, e in self.pairs), reverse=True))

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    def __mul__(self, other: "Factorization") -> "Factorization":
        merged: dict[int, int] = {}
        for p, e in self.pairs + other.pairs:
            merged[p] = merged.get(p, 0) + e
        return Factorization(tuple(sorted(merged.items())))

    def stat(self, statistic: str):
        if statistic == "omega":
            return self.omega
        if statistic == "big_omega":
            return self.big_omega
        if statistic == "d":
            return self.divisor_count
        if statistic == "pattern":
            return self.pattern()
        raise ValueError(f"unknown statistic {statistic!r}")


FACT_ONE = Factorization(())


def factorize(x: int) -> Factorization:
    """Full factorization of 1 <= x <= 2^63 - 1 (x=1 gives the empty product)."""
    _check_u63(x)
    if x < 1:
        raise ValueError("factorize requires x >= 1")
    found: dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        while x % p == 0:
            x //= p
            found[p] = found.get(p, 0) + 1
    stack = [x] if x > 1 else []
    while stack:
        n = stack.pop()
        if n == 1:
            continue
        if is_prime(n):
            found[n] = found.get(n, 0) + 1
            continue
        s = math.isqrt(n)
        if s * s == n:
            stack.extend((s, s))
            continue
        d = _brent(n)
        stack.extend((d, n // d))
    return Factorization(tuple(sorted(found.items())))


def arith_stats(f: Factorization) -> tuple[int, int, int]:
    """(omega, big Omega, divisor count) of a factorization."""
    return f.omega, f.big_omega, f.divisor_count


def exponent_pattern(f: Factorization) -> tuple[int, ...]:
    """Exponent multiset in canonical descending order."""
    return f.pattern()


def valuation(x: int, p: int) -> int:
    """Largest v with p^v | x, for x >= 1 and prime p."""
    if x < 1:
        raise ValueError("valuation requires x >= 1")
    if p < 2:
        raise ValueError("valuation requires p >= 2")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class ResidueClass:
    """The arithmetic progression residue + modulus*Z."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(f"residue {self.residue} not reduced mod {self.modulus}")

    def contains(self, m: int) -> bool:
        return m % self.modulus == self.residue

    def members(self, count: int, start: int = 0) -> Iterator[int]:
        for t in range(start, start + count):
            yield self.residue + t * self.modulus


EVERYTHING = ResidueClass(0, 1)


def crt_solve(congruences: Iterable[tuple[int, int]]) -> ResidueClass:
    """Merge (residue, modulus) constraints; moduli need not be coprime.

    Raises Incompatible when two constraints disagree on a shared factor.
    """
    r, m = 0, 1
    for r2, m2 in congruences:
        if m2 < 1:
            raise ValueError(f"modulus must be >= 1, got {m2}")
        r2 %= m2
        g = math.gcd(m, m2)
        if (r2 - r) % g != 0:
            raise Incompatible(
                f"m = {r} (mod {m}) conflicts with m = {r2} (mod {m2})"
            )
        lcm = m // g * m2
        t = (r2 - r) // g * pow(m // g, -1, m2 // g) % (m2 // g)
        r = (r + m * t) % lcm
        m = lcm
    return ResidueClass(r, m)


def solve_linear_congruence(a: int, c: int, modulus: int) -> ResidueClass:
    """Solutions m of a*m = c (mod modulus), as a residue class.

    Solvable iff gcd(a, modulus) | c; raises Incompatible otherwise.
    """
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    a %= modulus
    c %= modulus
    g = math.gcd(a, modulus)
    if c % g != 0:
        raise Incompatible(f"{a}*m = {c} (mod {modulus}) has no solution")
    m2 = modulus // g
    if m2 == 1:
        return EVERYTHING
    r = c // g * pow(a // g, -1, m2) % m2
    return ResidueClass(r, m2)


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit by plain sieve (small limits only)."""
    if limit < 2:
        return []
    mask = bytearray([1]) * (limit + 1)
    mask[0] = mask[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = bytearray(len(mask[p * p :: p]))
    return [i for i, b in enumerate(mask) if b]


def next_prime(x: int) -> int:
    """Smallest prime strictly greater than x."""
    n = x + 1
    if n <= 2:
        return 2
    if n % 2 == 0:
        n += 1
    while not is_prime(n):
        n += 2
    return n
