#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Runs each hot kernel on a few block sizes and prints per-backend timings
plus the speedup.  The compiled backend is loaded directly (bypassing the
SQF_KERNELS selection) so both can be timed in one process.

Usage:
    python benchmarks/bench_kernels.py [--repeats 5]
"""
from __future__ import annotations

import argparse
import importlib
import time
from math import isqrt

import numpy as np

from squarefree import sieve
from squarefree._kernels import pykernels


def load_compiled():
    try:
        return importlib.import_module("squarefree._kernels._sievecore")
    except ImportError:
        return None


def best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    compiled = load_compiled()
    if compiled is None:
        print("compiled backend not built; run pip install -e . --no-build-isolation")

    cases = []
    for start, n in ((1, 1 << 20), (10**9, 1 << 20), (1, 1 << 24)):
        base = sieve.primes_upto(isqrt(start + n - 1))
        cases.append((f"squarefree_block start={start:.0e} n=2^{n.bit_length() - 1}",
                      lambda b, s=start, m=n, pr=base: b.squarefree_block(s, m, pr)))
        cases.append((f"mobius_block     start={start:.0e} n=2^{n.bit_length() - 1}",
                      lambda b, s=start, m=n, pr=base: b.mobius_block(s, m, pr)))

    n = 1 << 22
    base = sieve.primes_upto(isqrt(n))
    cases.append((f"pair_correction  n=2^{n.bit_length() - 1}",
                  lambda b, m=n, pr=base: b.pair_correction_block(1, m, pr)))
    mask = pykernels.squarefree_block(1, n + 20, sieve.primes_upto(isqrt(n + 20)))
    offsets = np.array([0, 1, 2, 5, 9, 20], dtype=np.int64)
    cases.append((f"count_joint      n=2^{n.bit_length() - 1} (6 lags)",
                  lambda b, m=n: b.count_joint(mask, offsets, m)))

    width = max(len(name) for name, _ in cases)
    header = f"{'kernel':<{width}}  {'numpy':>9}  {'cython':>9}  {'speedup':>7}"
    print(header)
    print("-" * len(header))
    for name, fn in cases:
        t_py = best_of(lambda: fn(pykernels), args.repeats)
        if compiled is not None:
            t_cy = best_of(lambda: fn(compiled), args.repeats)
            print(f"{name:<{width}}  {t_py * 1e3:8.2f}ms {t_cy * 1e3:8.2f}ms  {t_py / t_cy:6.2f}x")
        else:
            print(f"{name:<{width}}  {t_py * 1e3:8.2f}ms {'n/a':>9}  {'':>7}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
