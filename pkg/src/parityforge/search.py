"""Simultaneous E2 search over adjoined systems and witness assembly.

The search walks the substituted variable in fixed-size segments. Small
primes up to the cutoff C are screened with strided survivor masks, the
remaining candidates get a deterministic two-prime split, and pairs of
forms that both split at the same index become hits. Segments are
processed in ascending order (optionally on a thread pool; the kernels
drop the GIL) and results are merged in segment order, so the hit list
is identical no matter how many workers run.
"""

from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .arith import MAX_VALUE, Factorization, factorize
from .catalog import Construction, Stage2Input, make_stage2_input, stage2_case_for_pair
from .errors import ClaimMismatch
from .forms import FormSystem, evaluate
from .kernels import e2_split_batch, factor_stats, prime_array, survivor_mask

DEFAULT_BOUND = 10**7
DEFAULT_SEGMENT = 1 << 16
_SCAN_SEGMENT = 1 << 20


@dataclass(frozen=True)
class E2Hit:
    """One substituted index where two forms are simultaneously E2."""

    ell: int
    pair: tuple[int, int]  # 0-based form indices, i < j
    values: tuple[int, int]
    factors: tuple[tuple[int, int], tuple[int, int]]  # ((p,q), (p,q)), p < q


@dataclass(frozen=True)
class Witness:
    theorem: str
    statistic: str
    value: int | tuple[int, ...]
    shift: int
    ell: int
    m: int
    pair: tuple[int, int]  # 1-based form indices
    x: int
    x_plus: int
    x_factors: Factorization
    x_plus_factors: Factorization
    C: int


def e2_check(x: int, C: int = 2) -> bool:
    """x = p*q with p < q and both primes exceeding C."""
    if x < 6:
        return False
    f = factorize(x)
    return f.pattern() == (1, 1) and f.pairs[0][0] > C


def _split_segment(system: FormSystem, primes: np.ndarray, lo: int, hi: int) -> list[E2Hit]:
    k = len(system)
    width = hi - lo
    alive = np.zeros((k, width), dtype=bool)
    for i, f in enumerate(system.forms):
        alive[i] = survivor_mask(f.a, f.b, lo, hi, primes)
    pair_any = np.zeros(width, dtype=bool)
    for i in range(k):
        for j in range(i + 1, k):
            pair_any |= alive[i] & alive[j]
    if not pair_any.any():
        return []
    splits: list[dict[int, tuple[int, tuple[int, int]]]] = []
    for i, f in enumerate(system.forms):
        offsets = np.flatnonzero(alive[i] & pair_any)
        table: dict[int, tuple[int, tuple[int, int]]] = {}
        if offsets.size:
            ells = offsets.astype(np.int64) + np.int64(lo)
            values = np.int64(f.a) * ells + np.int64(f.b)
            ps, qs = e2_split_batch(values)
            for row, off in enumerate(offsets.tolist()):
                if ps[row]:
                    table[off] = (int(values[row]), (int(ps[row]), int(qs[row])))
        splits.append(table)
    hits: list[E2Hit] = []
    for off in np.flatnonzero(pair_any).tolist():
        for i in range(k):
            got_i = splits[i].get(off)
            if got_i is None:
                continue
            for j in range(i + 1, k):
                got_j = splits[j].get(off)
                if got_j is not None:
                    hits.append(
                        E2Hit(lo + off, (i, j), (got_i[0], got_j[0]), (got_i[1], got_j[1]))
                    )
    return hits


def find_simultaneous_e2(
    system: FormSystem,
    C: int,
    lo: int = 0,
    hi: int = DEFAULT_BOUND,
    limit: int = 100,
    segment: int = DEFAULT_SEGMENT,
    workers: int = 1,
) -> list[E2Hit]:
    """Hits with every form value free of primes <= C, ascending by index.

    Within one index, pairs come in lexicographic order. The result is a
    pure function of (system, C, lo, hi, limit, segment); workers only
    change wall time.
    """
    if len(system) < 2:
        raise ValueError("need at least two forms")
    if limit < 1 or hi <= lo:
        return []
    for f in system.forms:
        try:
            evaluate(f, hi - 1)  # the kernels must stay inside int64
        except OverflowError:
            usable = (MAX_VALUE - f.b) // f.a
            if usable <= lo:
                raise OverflowError(
                    f"form {f} leaves no searchable 64-bit range"
                ) from None
            raise OverflowError(
                f"scan bound {hi} overflows 64-bit values on {f}; largest usable bound is {usable + 1}"
            ) from None
    primes = prime_array(max(C, 2))
    bounds = [(s, min(s + segment, hi)) for s in range(lo, hi, segment)]
    hits: list[E2Hit] = []
    if workers <= 1:
        for s_lo, s_hi in bounds:
            hits.extend(_split_segment(system, primes, s_lo, s_hi))
            if len(hits) >= limit:
                break
        return hits[:limit]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        pending: deque = deque()
        index = 0
        while index < len(bounds) or pending:
            while index < len(bounds) and len(pending) < 2 * workers:
                s_lo, s_hi = bounds[index]
                pending.append(pool.submit(_split_segment, system, primes, s_lo, s_hi))
                index += 1
            hits.extend(pending.popleft().result())
            if len(hits) >= limit:
                for fut in pending:
                    fut.cancel()
                break
    return hits[:limit]


def assemble_witness(c: Construction, hit: E2Hit) -> Witness:
    """Turn a hit on c's adjoined system into a checked witness pair."""
    for rel, pred in zip(c.relations, c.predictions):
        if (rel.i, rel.j) == hit.pair:
            break
    else:
        raise ClaimMismatch(f"no relation for pair {hit.pair}")
    m = evaluate(c.adjoined.K, hit.ell)
    lo_form, lo_mult = rel.low_side()
    hi_form, hi_mult = rel.high_side()
    x = lo_mult * evaluate(c.base[lo_form], m)
    x_plus = hi_mult * evaluate(c.base[hi_form], m)
    if max(x, x_plus) > MAX_VALUE:
        raise OverflowError(f"witness at index {hit.ell} exceeds the 64-bit range")
    shift = abs(rel.shift)
    if x_plus - x != shift:
        raise ClaimMismatch(
            f"sides at index {hit.ell} differ by {x_plus - x}, relation says {shift}"
        )
    sides = []
    for side_pred, form, value in ((pred.low, lo_form, x), (pred.high, hi_form, x_plus)):
        fresh = hit.factors[0] if form == hit.pair[0] else hit.factors[1]
        if fresh[0] <= c.C:
            raise ClaimMismatch(f"fresh prime {fresh[0]} at index {hit.ell} is not above C={c.C}")
        full = side_pred.fixed * Factorization(((fresh[0], 1), (fresh[1], 1)))
        if full.value != value:
            raise ClaimMismatch(
                f"form {form + 1} at index {hit.ell}: fixed part times fresh pair "
                f"gives {full.value}, the side evaluates to {value}"
            )
        if full.stat(c.claim.statistic) != c.claim.value:
            raise ClaimMismatch(
                f"form {form + 1} at index {hit.ell}: {c.claim.statistic}="
                f"{full.stat(c.claim.statistic)}, claim says {c.claim.value}"
            )
        sides.append(full)
    return Witness(
        theorem=c.theorem,
        statistic=c.claim.statistic,
        value=c.claim.value,
        shift=shift,
        ell=hit.ell,
        m=m,
        pair=(hit.pair[0] + 1, hit.pair[1] + 1),
        x=x,
        x_plus=x_plus,
        x_factors=sides[0],
        x_plus_factors=sides[1],
        C=c.C,
    )


def verify_witness(w: Witness) -> bool:
    """Refactor both sides from scratch and recheck every claim."""
    if w.x_plus - w.x != w.shift:
        return False
    fx = factorize(w.x)
    fy = factorize(w.x_plus)
    if fx != w.x_factors or fy != w.x_plus_factors:
        return False
    return fx.stat(w.statistic) == w.value and fy.stat(w.statistic) == w.value


def search_witnesses(
    c: Construction,
    lo: int = 0,
    hi: int = DEFAULT_BOUND,
    limit: int = 100,
    segment: int = DEFAULT_SEGMENT,
    workers: int = 1,
) -> tuple[list[Witness], list[ClaimMismatch]]:
    """find_simultaneous_e2 on c's reduced system, assembled into witnesses.

    Hits whose assembly fails are collected instead of raised, so one bad
    prediction cannot hide later witnesses.
    """
    hits = find_simultaneous_e2(
        c.adjoined.reduced, c.C, lo=lo, hi=hi, limit=limit, segment=segment, workers=workers
    )
    witnesses: list[Witness] = []
    mismatches: list[ClaimMismatch] = []
    for hit in hits:
        try:
            witnesses.append(assemble_witness(c, hit))
        except ClaimMismatch as exc:
            mismatches.append(exc)
        except OverflowError as exc:
            mismatches.append(ClaimMismatch(str(exc)))
    return witnesses, mismatches


def stage2_input_from_hit(hit: E2Hit, n: int) -> Stage2Input:
    """Package a stage-1 hit; the anchor is always the lower-index form."""
    case = stage2_case_for_pair(hit.pair)
    return make_stage2_input(case, hit.values[0], n)


def witness_to_dict(w: Witness) -> dict:
    value = list(w.value) if isinstance(w.value, tuple) else w.value
    return {
        "schema": "parity-forge/1",
        "kind": "witness",
        "theorem": w.theorem,
        "statistic": w.statistic,
        "value": value,
        "shift": w.shift,
        "ell": w.ell,
        "m": w.m,
        "pair": list(w.pair),
        "x": w.x,
        "x_plus_n": w.x_plus,
        "x_factors": [list(pair) for pair in w.x_factors.pairs],
        "x_plus_n_factors": [list(pair) for pair in w.x_plus_factors.pairs],
        "C": w.C,
    }


# ---------------------------------------------------------------------------
# brute-force scans (reference oracles, also exposed on the CLI)


def _stat_arrays(lo: int, hi: int, primes: np.ndarray):
    om, bo, dd = factor_stats(lo, hi, primes)
    return om, bo, dd


def oracle_scan(
    statistic: str,
    value,
    shift: int,
    limit: int,
    segment: int = _SCAN_SEGMENT,
) -> list[int]:
    """Every x <= limit with statistic(x) == statistic(x + shift) == value.

    Exhaustive by sieve, independent of the construction machinery; this
    is the ground truth the targeted searches are checked against.
    """
    if shift < 1:
        raise ValueError("shift must be positive")
    if limit < 2:
        return []
    pattern = None
    if statistic == "pattern":
        pattern = tuple(sorted(value, reverse=True))
        want_om, want_bo = len(pattern), sum(pattern)
    primes = prime_array(math.isqrt(limit + shift) + 1)
    out: list[int] = []
    for lo in range(2, limit + 1, segment):
        hi = min(lo + segment, limit + 1)
        om, bo, dd = _stat_arrays(lo, hi + shift, primes)
        if statistic == "omega":
            ok = om[: hi - lo] == value
            ok &= om[shift : hi - lo + shift] == value
        elif statistic == "big_omega":
            ok = bo[: hi - lo] == value
            ok &= bo[shift : hi - lo + shift] == value
        elif statistic == "d":
            ok = dd[: hi - lo] == value
            ok &= dd[shift : hi - lo + shift] == value
        elif statistic == "pattern":
            ok = (om[: hi - lo] == want_om) & (bo[: hi - lo] == want_bo)
            ok &= (om[shift : hi - lo + shift] == want_om) & (
                bo[shift : hi - lo + shift] == want_bo
            )
        else:
            raise ValueError(f"unknown statistic {statistic!r}")
        for off in np.flatnonzero(ok).tolist():
            x = lo + off
            if pattern is not None:
                if factorize(x).pattern() != pattern or factorize(x + shift).pattern() != pattern:
                    continue
            out.append(x)
    return out


def e2_gap_scan(limit: int, max_gap: int, segment: int = _SCAN_SEGMENT) -> list[tuple[int, int]]:
    """Consecutive E2 numbers q < q' <= limit with q' - q <= max_gap."""
    if limit < 6:
        return []
    primes = prime_array(math.isqrt(limit) + 1)
    out: list[tuple[int, int]] = []
    prev = None
    for lo in range(2, limit + 1, segment):
        hi = min(lo + segment, limit + 1)
        om, bo, _ = _stat_arrays(lo, hi, primes)
        for off in np.flatnonzero((om == 2) & (bo == 2)).tolist():
            x = lo + off
            if prev is not None and x - prev <= max_gap:
                out.append((prev, x))
            prev = x
    return out
