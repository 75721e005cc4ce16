"""Time the numba kernels against the pure-numpy fallback.

Loads both implementations side by side (no env flag needed), warms the
JIT, then reports best-of-N wall times for each entry point on segment
sizes the searches actually use.

    python3 benchmarks/bench_kernels.py [--segment 65536] [--repeat 5]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from parityforge import _kernels_py
from parityforge.kernels import prime_array

try:
    from parityforge import _kernels_nb

    HAS_NUMBA = True
except ImportError:
    _kernels_nb = None
    HAS_NUMBA = False


def best_of(fn, args, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(segment):
    lo = 10**12
    hi = lo + segment
    base = prime_array(math.isqrt(hi - 1))

    # survivors of the screen, the inputs e2_split_batch sees in practice
    screen = base[base < 10**4]
    m0 = 10**9
    alive = _kernels_py.survivor_mask(672, 41, m0, m0 + segment, screen)
    ms = m0 + np.flatnonzero(alive).astype(np.int64)
    survivors = (672 * ms + 41)[:1000]

    return [
        ("factor_stats", (lo, hi, base)),
        ("survivor_mask", (672, 41, 0, segment, base)),
        ("e2_split_batch", (survivors,)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--segment", type=int, default=1 << 16)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    jobs = workloads(args.segment)

    if HAS_NUMBA:
        # first call pays the compile cost; keep it out of the timings
        for name, job_args in jobs:
            getattr(_kernels_nb, name)(*job_args)

    print(f"segment={args.segment}  repeat={args.repeat}  best-of wall times")
    header = f"{'kernel':<16} {'numpy':>10} {'numba':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, job_args in jobs:
        t_py = best_of(getattr(_kernels_py, name), job_args, args.repeat)
        if HAS_NUMBA:
            t_nb = best_of(getattr(_kernels_nb, name), job_args, args.repeat)
            print(f"{name:<16} {t_py * 1e3:>8.2f}ms {t_nb * 1e3:>8.2f}ms {t_py / t_nb:>7.1f}x")
        else:
            print(f"{name:<16} {t_py * 1e3:>8.2f}ms {'n/a':>10} {'n/a':>8}")

    if not HAS_NUMBA:
        print("numba not importable; fallback timings only")


if __name__ == "__main__":
    main()
