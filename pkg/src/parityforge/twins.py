"""Twin prime pairs, the shifted-coprimality condition on n, and S-products."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import NotOdd, OutOfDomain
from .kernels import prime_array, prime_mask

_SEGMENT = 1 << 22


@dataclass(frozen=True)
class TwinPair:
    """A prime pair (p, p+2), addressed by its lower member."""

    p: int

    @property
    def q(self) -> int:
        return self.p + 2

    @property
    def product(self) -> int:
        return self.p * (self.p + 2)


def iter_twin_pairs(limit: int) -> Iterator[TwinPair]:
    """Twin pairs with lower member <= limit, ascending, segment-sieved.

    Each segment is sieved two values past its end so straddling pairs
    need no stitching.
    """
    if limit < 3:
        return
    base = prime_array(math.isqrt(limit + 2) + 1)
    lo = 3
    while lo <= limit:
        hi = min(lo + _SEGMENT, limit + 1)
        mask = prime_mask(lo, hi + 2, base)
        n = hi - lo
        for off in np.flatnonzero(mask[:n] & mask[2 : n + 2]).tolist():
            yield TwinPair(lo + off)
        lo = hi


def twin_pairs(limit: int) -> list[TwinPair]:
    return list(iter_twin_pairs(limit))


@dataclass(frozen=True)
class HypTReport:
    """Smallest twin pair whose product does not divide n, if any."""

    n: int
    pair: TwinPair | None
    strong: bool
    searched_up_to: int

    @property
    def holds(self) -> bool:
        return self.pair is not None


def check_hypothesis_t(n: int, limit: int = 10**6) -> HypTReport:
    """First twin pair (p, p+2) with p*(p+2) not dividing the odd n.

    strong records the stricter property that neither p nor p+2 divides n.
    """
    if n < 1:
        raise OutOfDomain(f"n must be a positive integer, got {n}")
    if n % 2 == 0:
        raise NotOdd(f"n must be odd, got {n}")
    for pair in iter_twin_pairs(limit):
        if n % pair.product:
            strong = n % pair.p != 0 and n % pair.q != 0
            return HypTReport(n, pair, strong, limit)
    return HypTReport(n, None, False, limit)


def first_strong_pair(n: int, limit: int = 10**6) -> TwinPair | None:
    """First twin pair with p and p+2 both coprime to the odd n."""
    if n % 2 == 0:
        raise NotOdd(f"n must be odd, got {n}")
    for pair in iter_twin_pairs(limit):
        if n % pair.p and n % pair.q:
            return pair
    return None


def product_S(pairs: Iterable[TwinPair], mode: str = "union") -> tuple[int, int]:
    """Product over the pair set and its decimal digit count.

    mode "union": product of the distinct primes appearing in any pair;
    mode "pairs": product of p*(p+2) over the pairs (shared primes counted
    once per pair they appear in).
    """
    s = 1
    if mode == "union":
        for p in sorted({x for pair in pairs for x in (pair.p, pair.q)}):
            s *= p
    elif mode == "pairs":
        for pair in pairs:
            s *= pair.product
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return s, len(str(s))


def census_digit_bound(census_count: int, digits_per_pair: int = 30) -> int:
    """Lower bound on log10 of the pair-product implied by a census count
    of twin pairs whose product has at least digits_per_pair digits."""
    if census_count < 0 or digits_per_pair < 1:
        raise ValueError("census_count >= 0 and digits_per_pair >= 1 required")
    return census_count * digits_per_pair
