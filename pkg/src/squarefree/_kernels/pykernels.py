"""Vectorized numpy implementations of the block kernels.

This is the fallback backend, used when the compiled extension is not
built (or when SQF_KERNELS=py forces it).  Both backends must produce
bit-identical arrays for identical arguments.

All kernels take a `primes` array covering at least the primes up to
sqrt(start + n - 1); they stop early once p*p exceeds the block end.
"""
from __future__ import annotations

import numpy as np


def squarefree_block(start: int, n: int, primes: np.ndarray) -> np.ndarray:
    """0/1 array of length n; entry i is 1 iff no p^2 divides start+i."""
    end = start + n - 1
    bits = np.ones(n, dtype=np.uint8)
    for p in primes:
        p = int(p)
        p2 = p * p
        if p2 > end:
            break
        bits[(-start) % p2 :: p2] = 0
    return bits


def mobius_block(start: int, n: int, primes: np.ndarray) -> np.ndarray:
    """Mobius values of start..start+n-1 as int8, by segmented sieving."""
    end = start + n - 1
    mu = np.ones(n, dtype=np.int8)
    lead = np.ones(n, dtype=np.int64)  # product of the sieved prime divisors
    for p in primes:
        p = int(p)
        if p * p > end:
            break
        first = (-start) % p
        np.negative(mu[first::p], out=mu[first::p])
        lead[first::p] *= p
        p2 = p * p
        mu[(-start) % p2 :: p2] = 0
    # a leftover cofactor is a single prime above sqrt(end): one more sign flip
    values = start + np.arange(n, dtype=np.int64)
    flip = (mu != 0) & (lead != values)
    np.negative(mu, where=flip, out=mu)
    return mu


def count_joint(mask: np.ndarray, offsets: np.ndarray, limit: int) -> int:
    """Count i in [0, limit) with mask[i+k] == 1 for every offset k.

    mask must extend to limit + max(offsets).
    """
    offs = [int(k) for k in offsets]
    acc = mask[offs[0] : offs[0] + limit].copy()
    for k in offs[1:]:
        acc &= mask[k : k + limit]
    return int(acc.sum())


def pair_correction_block(start: int, n: int, primes: np.ndarray) -> np.ndarray:
    """Product over p^2 | m of (p^2-1)/(p^2-2), for m = start..start+n-1."""
    end = start + n - 1
    out = np.ones(n, dtype=np.float64)
    for p in primes:
        p = int(p)
        p2 = p * p
        if p2 > end:
            break
        out[(-start) % p2 :: p2] *= (p2 - 1.0) / (p2 - 2.0)
    return out


def square_radical_block(start: int, n: int, primes: np.ndarray) -> np.ndarray:
    """Product of the primes p with p^2 | m, for m = start..start+n-1."""
    end = start + n - 1
    out = np.ones(n, dtype=np.int64)
    for p in primes:
        p = int(p)
        p2 = p * p
        if p2 > end:
            break
        out[(-start) % p2 :: p2] *= p
    return out
