"""Correlation functions of the square-free indicator, three independent ways.

For lags 0 <= k_1 < ... < k_r, the (r+1)-st correlation is the limiting
frequency of n such that n, n+k_1, ..., n+k_r are all square-free.  It is
computable as

* an empirical frequency over a sieved range (`empirical_correlation`),
* the prime product  prod_p (1 - A_p/p^2)  where A_p counts the distinct
  residues of {0, k_1, ..., k_r} mod p^2 (`mirsky_correlation`),
* for the pair correlation c_2, the sum of sigma_d over square-free d
  with d^2 | k (`c2_sum_form`), and
* a partial sum of the absolutely convergent root-of-unity series with
  coefficients g(s) (`hall_series_partial`).

Cross-agreement of these routes is the package's main correctness check.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as kernels
from . import euler, sieve
from .errors import DomainError, PolicyError
from .euler import DEFAULT_POLICY, TruncationPolicy

#: Density of the square-free integers, 1/zeta(2).
DENSITY = 6.0 / math.pi**2


@dataclass(frozen=True)
class LagTuple:
    """Strictly increasing lags k_1 < ... < k_r with k_1 >= 0.

    The empty tuple is the order-1 correlation, i.e. the density itself.
    """

    lags: tuple[int, ...]

    def __post_init__(self) -> None:
        for k in self.lags:
            if k != int(k) or k < 0:
                raise DomainError(f"lags must be nonnegative integers, got {k}")
        if any(a >= b for a, b in zip(self.lags, self.lags[1:])):
            raise DomainError(f"lags must be strictly increasing, got {self.lags}")

    @classmethod
    def of(cls, lags: "LagTuple | Sequence[int]") -> "LagTuple":
        if isinstance(lags, LagTuple):
            return lags
        return cls(tuple(int(k) for k in lags))

    @property
    def r(self) -> int:
        return len(self.lags)

    def offsets(self) -> tuple[int, ...]:
        """The distinct shifts {0} union lags, ascending."""
        return tuple(sorted({0, *self.lags}))


@dataclass(frozen=True)
class CorrelationValue:
    """A correlation value with its certified truncation error.

    For the closed-form methods, |value - exact| <= tail_bound * value.
    Empirical counts are exact, so their tail_bound is 0.
    """

    value: float
    tail_bound: float
    method: str
    n: int | None = None


# ---------------------------------------------------------------------------
# empirical route

def empirical_correlation(lags: "LagTuple | Sequence[int]", limit: int) -> CorrelationValue:
    """Frequency of n <= limit with n+k square-free for every k in {0} u lags."""
    lt = LagTuple.of(lags)
    if limit < 1:
        raise DomainError(f"limit must be >= 1, got {limit}")
    offsets = lt.offsets()
    mask = sieve.mu2_indicator(1, limit + offsets[-1])
    count = kernels.count_joint(mask, np.asarray(offsets, dtype=np.int64), limit)
    return CorrelationValue(count / limit, 0.0, "empirical", n=limit)


# ---------------------------------------------------------------------------
# prime-product route

def _scan_primes(kmax: int) -> Iterable[int]:
    return (int(p) for p in sieve.primes_upto(isqrt(kmax)))


def mirsky_correlation(
    lags: "LagTuple | Sequence[int]", policy: TruncationPolicy = DEFAULT_POLICY
) -> CorrelationValue:
    """Correlation as the product over primes of (1 - A_p/p^2).

    A_p is the number of distinct residues of the offsets mod p^2, so
    A_p equals the number of offsets R for every p with p^2 > max(lags).
    The product is evaluated in three pieces: exact factors for the
    finitely many scanned primes (p^2 <= max lag), the policy-controlled
    product of (1 - R/p^2) over the remaining table primes, and the
    certified analytic tail.  The result is exactly 0 when some A_p fills
    all of Z/p^2Z.
    """
    lt = LagTuple.of(lags)
    offsets = lt.offsets()
    order = len(offsets)
    kmax = offsets[-1]
    if policy.cutoff**2 <= order:
        raise PolicyError(
            f"correlation order {order} needs cutoff P with P^2 > {order}, "
            f"got {policy.cutoff}"
        )
    scanned = 1.0
    for p in _scan_primes(kmax):
        p2 = p * p
        residues = len({k % p2 for k in offsets})
        if residues == p2:
            return CorrelationValue(0.0, 0.0, "mirsky")
        scanned *= 1.0 - residues / p2
    # beyond the scanned primes A_p == order; the factor can only vanish
    # when order is the square of such a prime
    q = isqrt(order)
    if q * q == order and q > isqrt(kmax) and sieve.is_prime(q):
        return CorrelationValue(0.0, 0.0, "mirsky")
    rest, bound = euler.product_beyond(order, isqrt(kmax), policy)
    return CorrelationValue(scanned * rest, bound, "mirsky")


# ---------------------------------------------------------------------------
# sigma_d sum route

@lru_cache(maxsize=8)
def _sigma1(policy: TruncationPolicy) -> tuple[float, float]:
    return euler.product_all(2, policy)


def sigma1(policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """sigma_1 = prod_p (1 - 2/p^2), the pair correlation at square-free lag."""
    return _sigma1(policy)[0]


def sigma_d(d: "int | sieve.SquarefreeInt", policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """sigma_d = (1/d^2) prod_{p not dividing d} (1 - 2/p^2).

    Evaluated through the identity sigma_d = sigma_1 * prod_{p|d} 1/(p^2-2),
    which keeps one certified product shared by every d.
    """
    sf = sieve.SquarefreeInt.of(d)
    value = _sigma1(policy)[0]
    for p in sf.primes:
        value /= p * p - 2
    return value


def c2_sum_form(k: int, policy: TruncationPolicy = DEFAULT_POLICY) -> CorrelationValue:
    """Pair correlation c_2(k) as the sum of sigma_d over d^2 | k, mu^2(d)=1.

    Negative k is folded to |k| (the pair correlation is even).  For k = 0
    every square-free d contributes and the complete series telescopes to
    prod_p (1 - 1/p^2); that closed form is what gets evaluated, with the
    same certified tail machinery as every other product.
    """
    k = abs(int(k))
    if k == 0:
        value, bound = euler.product_all(1, policy)
        return CorrelationValue(value, bound, "sigma_sum")
    bound = _sigma1(policy)[1]
    square_primes = sieve.factor_summary(k).square_primes
    total = 0.0
    for picks in iproduct((False, True), repeat=len(square_primes)):
        d = math.prod(p for p, take in zip(square_primes, picks) if take)
        total += sigma_d(d, policy)
    return CorrelationValue(total, bound, "sigma_sum")


# ---------------------------------------------------------------------------
# level sets of c_2

def level_set_coefficient(d: "int | sieve.SquarefreeInt") -> Fraction:
    """Rational q with density(d) = q / pi^2: q = 6 prod_{p|d} 1/(p^2-1)."""
    sf = sieve.SquarefreeInt.of(d)
    denom = 1
    for p in sf.primes:
        denom *= p * p - 1
    return Fraction(6, denom)


def level_set_density(d: "int | sieve.SquarefreeInt") -> float:
    """Density of the k whose square-full prime support equals the primes of d."""
    return float(level_set_coefficient(d)) / math.pi**2


# ---------------------------------------------------------------------------
# root-of-unity series route

def hall_coefficient(d: "int | sieve.SquarefreeInt") -> float:
    """g(d) = (6/pi^2) mu(d) prod_{p|d} 1/(p^2-1); zero would never arise
    since d is validated square-free."""
    sf = sieve.SquarefreeInt.of(d)
    value = DENSITY * sf.mobius
    for p in sf.primes:
        value /= p * p - 1
    return value


def _phase(num: int, den: int) -> complex:
    return cmath.exp(2j * math.pi * ((num % den) / den))


def hall_series_partial(lags: "LagTuple | Sequence[int]", s_max: int) -> float:
    """Partial sum of the series c_{r+1} = sum over s-tuples of
    g(s_0)...g(s_r) times the constrained root-of-unity sums.

    All tuples with every s_j <= s_max are accumulated, ordered by
    increasing max(s_j) and then lexicographically.  Inner indices t_j run
    over 0..s_j^2-1 with gcd(t_j, s_j^2) square-free and the t_j/s_j^2
    summing to an integer; the phase attached to a tuple is
    e(t_1 k_1/s_1^2 + ... + t_r k_r/s_r^2).  Orders above 3 (r > 2) are
    out of scope.
    """
    lt = LagTuple.of(lags)
    r = lt.r
    if r > 2:
        raise DomainError(f"series is implemented for r <= 2, got r = {r}")
    if s_max < 1:
        raise DomainError(f"s_max must be >= 1, got {s_max}")
    mu2 = sieve.mu2_indicator(1, s_max * s_max)

    def gcd_ok(t: int, s2: int) -> bool:
        return bool(mu2[gcd(t, s2) - 1])

    g = {s: hall_coefficient(s) for s in range(1, s_max + 1) if bool(mu2[s - 1])}
    tuples = sorted(iproduct(g, repeat=r + 1), key=lambda t: (max(t), t))
    total = 0.0 + 0.0j
    for tup in tuples:
        s0 = tup[0]
        s0sq = s0 * s0
        weight = math.prod(g[s] for s in tup)
        if r == 0:
            # t_0/s_0^2 integral forces t_0 = 0, and gcd(0, s^2) = s^2
            # is square-free only for s_0 = 1
            if s0 == 1:
                total += weight
            continue
        if r == 1:
            s1 = tup[1]
            s1sq = s1 * s1
            k1 = lt.lags[0]
            for t1 in range(s1sq):
                if not gcd_ok(t1, s1sq):
                    continue
                num = s0sq * ((s1sq - t1) % s1sq)
                if num % s1sq:
                    continue
                t0 = num // s1sq
                if gcd_ok(t0, s0sq):
                    total += weight * _phase(t1 * k1, s1sq)
            continue
        s1, s2 = tup[1], tup[2]
        s1sq, s2sq = s1 * s1, s2 * s2
        k1, k2 = lt.lags
        for t1 in range(s1sq):
            if not gcd_ok(t1, s1sq):
                continue
            for t2 in range(s2sq):
                if not gcd_ok(t2, s2sq):
                    continue
                rem = (-Fraction(t1, s1sq) - Fraction(t2, s2sq)) % 1
                t0_frac = rem * s0sq
                if t0_frac.denominator != 1:
                    continue
                t0 = int(t0_frac) % s0sq
                if gcd_ok(t0, s0sq):
                    total += weight * (_phase(t1 * k1, s1sq) * _phase(t2 * k2, s2sq))
    return total.real


# ---------------------------------------------------------------------------
# bulk c_2 evaluation

class _C2Cache:
    """Growing cache of c_2(1..limit) arrays, one per policy."""

    def __init__(self) -> None:
        self._data: dict[TruncationPolicy, np.ndarray] = {}

    def values(self, limit: int, policy: TruncationPolicy) -> np.ndarray:
        arr = self._data.get(policy)
        if arr is None or len(arr) < limit:
            # grow to the next power of two so creeping limits reuse one build
            target = 1 << (limit - 1).bit_length()
            base = sieve.primes_upto(isqrt(target))
            corr = kernels.pair_correction_block(1, target, base)
            arr = corr * sigma1(policy)
            self._data[policy] = arr
        return arr[:limit]


_c2_cache = _C2Cache()


def c2_values(limit: int, policy: TruncationPolicy = DEFAULT_POLICY) -> np.ndarray:
    """c_2(n) for n = 1..limit as a float64 array (index i holds n = i+1)."""
    if limit < 1:
        raise DomainError(f"limit must be >= 1, got {limit}")
    return _c2_cache.values(limit, policy)
