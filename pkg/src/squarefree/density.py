"""Densities of square-free numbers avoiding a finite prime set, with the
explicit error constant, plus the Dirichlet-convolution identities behind
them.

For a finite prime set S, the square-free integers coprime to every p in S
have density alpha(S)/zeta(2) with alpha(S) = prod p/(p+1), and the finite
counts obey

    | count(N)/N - alpha(S)/zeta(2) |  <=  C(S) / sqrt(N)    for N >= 4,

with the fully explicit constant

    C(S) = 4 prod (p-1)/p + (prod p - 1) - prod (p-1).

Counts are exact integers and the constants exact rationals, so the bound
check is never polluted by rounding; zeta(2) enters only as pi^2/6 in
double precision, whose error is orders of magnitude below every margin.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from . import sieve
from .errors import DomainError

ZETA2 = math.pi**2 / 6


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of primes; empty is allowed and has product 1."""

    primes: tuple[int, ...]
    product: int

    @classmethod
    def of(cls, primes: "PrimeSet | tuple[int, ...] | list[int]") -> "PrimeSet":
        if isinstance(primes, PrimeSet):
            return primes
        ps = sorted(set(int(p) for p in primes))
        for p in ps:
            if not sieve.is_prime(p):
                raise DomainError(f"{p} is not prime")
        return cls(tuple(ps), math.prod(ps))


def alpha(s: "PrimeSet | tuple[int, ...] | list[int]") -> Fraction:
    """alpha(S) = prod_{p in S} p/(p+1); the empty product is 1."""
    ps = PrimeSet.of(s)
    value = Fraction(1)
    for p in ps.primes:
        value *= Fraction(p, p + 1)
    return value


def error_constant(s: "PrimeSet | tuple[int, ...] | list[int]") -> Fraction:
    """C(S) = 4 prod (p-1)/p + (prod p - 1) - prod (p-1), exactly."""
    ps = PrimeSet.of(s)
    frac = Fraction(1)
    shrink = 1
    for p in ps.primes:
        frac *= Fraction(p - 1, p)
        shrink *= p - 1
    return 4 * frac + (ps.product - 1) - shrink


@dataclass(frozen=True)
class DensityReport:
    """Exact count of square-free n <= N coprime to S, against the limit."""

    s: PrimeSet
    n: int
    count: int
    empirical: Fraction
    limit: float
    constant: Fraction
    margin: float
    bound_checked: bool

    @property
    def bound_holds(self) -> bool:
        return self.margin >= 0.0


def restricted_count(
    s: "PrimeSet | tuple[int, ...] | list[int]", n: int
) -> DensityReport:
    """Count square-free integers <= n not divisible by any prime of S.

    The margin is C(S)/sqrt(n) - |count/n - alpha(S)/zeta(2)|; for n >= 4
    the explicit bound asserts it is nonnegative.
    """
    ps = PrimeSet.of(s)
    if n < 1:
        raise DomainError(f"limit must be >= 1, got {n}")
    mask = sieve.mu2_indicator(1, n)
    if ps.primes:
        values = np.arange(1, n + 1, dtype=np.int64)
        keep = np.ones(n, dtype=bool)
        for p in ps.primes:
            keep &= values % p != 0
        count = int(mask[keep].sum())
    else:
        count = int(mask.sum())
    empirical = Fraction(count, n)
    limit = float(alpha(ps)) / ZETA2
    constant = error_constant(ps)
    margin = float(constant) / math.sqrt(n) - abs(count / n - limit)
    return DensityReport(ps, n, count, empirical, limit, constant, margin, n >= 4)


# ---------------------------------------------------------------------------
# Dirichlet-convolution identities

def w_sequence(s: "PrimeSet | tuple[int, ...] | list[int]", limit: int) -> np.ndarray:
    """Indicator of coprimality to S on 1..limit (index 0 unused)."""
    ps = PrimeSet.of(s)
    w = np.ones(limit + 1, dtype=np.int64)
    w[0] = 0
    for p in ps.primes:
        w[p::p] = 0
    return w


def mobius_sequence(limit: int) -> np.ndarray:
    """mu on 1..limit as int64 (index 0 unused)."""
    out = np.zeros(limit + 1, dtype=np.int64)
    out[1:] = sieve.mobius_range(1, limit)
    return out


def delta_one(limit: int) -> np.ndarray:
    out = np.zeros(limit + 1, dtype=np.int64)
    out[1] = 1
    return out


def dirichlet_convolve(a: np.ndarray, b: np.ndarray, limit: int) -> np.ndarray:
    """(a*b)(n) = sum_{d|n} a(d) b(n/d) for n = 1..limit, exactly.

    Arrays are 1-based (index 0 ignored) and must cover 1..limit.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if len(a) < limit + 1 or len(b) < limit + 1:
        raise DomainError("sequences must be defined on 1..limit")
    out = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        q = limit // d
        out[d :: d][:q] += a[d] * b[1 : q + 1]
    return out


@dataclass(frozen=True)
class SeriesReport:
    """Partial sums of the w-weighted quadratic series against their closed
    forms, with the certified tail 1/(limit-1)."""

    s: PrimeSet
    limit: int
    w_partial: float
    w_target: float
    mobius_partial: float
    mobius_target: float
    tail_bound: float

    @property
    def w_ok(self) -> bool:
        return abs(self.w_partial - self.w_target) <= self.tail_bound

    @property
    def mobius_ok(self) -> bool:
        return abs(self.mobius_partial - self.mobius_target) <= self.tail_bound


def partial_series_checks(
    s: "PrimeSet | tuple[int, ...] | list[int] | int", limit: int
) -> SeriesReport:
    """Compare sum w_S(n)/n^2 and sum mu(n) w_S(n)/n^2 over n <= limit with
    a(S) zeta(2) and 1/(a(S) zeta(2)), where a(S) = prod (p^2-1)/p^2.

    Both series have terms bounded by 1/n^2, so the partial sums sit within
    1/(limit-1) of their limits.
    """
    if isinstance(s, int):
        s = (s,)
    ps = PrimeSet.of(s)
    if limit < 10**3:
        raise DomainError(f"series limit must be >= 1000, got {limit}")
    w = w_sequence(ps, limit).astype(np.float64)
    inv_sq = np.zeros(limit + 1)
    ns = np.arange(1, limit + 1, dtype=np.float64)
    inv_sq[1:] = 1.0 / (ns * ns)
    mu = mobius_sequence(limit).astype(np.float64)
    a_s = 1.0
    for p in ps.primes:
        a_s *= (p * p - 1) / (p * p)
    w_partial = float(np.sum(w * inv_sq))
    mobius_partial = float(np.sum(mu * w * inv_sq))
    return SeriesReport(
        ps,
        limit,
        w_partial,
        a_s * ZETA2,
        mobius_partial,
        1.0 / (a_s * ZETA2),
        1.0 / (limit - 1),
    )


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Split n = n1 * n2^2 with n1 square-free: n1 collects the primes of
    odd exponent."""
    fs = sieve.factor_summary(n)
    n1 = 1
    m = n
    for p in fs.distinct_primes:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e % 2:
            n1 *= p
    n2 = isqrt(n // n1)
    return n1, n2
