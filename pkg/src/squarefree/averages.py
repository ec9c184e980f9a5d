"""Progression averages of c_2 and the exponential-sum limits they control.

Averaging c_2 along the progression d^2 l + t has a closed-form limit that
depends only on d and the square part of gcd(t, d^2).  Weighting the terms
by powers of a spectrum point lam = e(l/d^2) and averaging gives the
exponential-sum limit y2(lam) = g(d)^2; the analogous double average of the
triple correlation gives y3(lam1, lam2) = g(d1) g(d2) g(d).  Each closed
form here is paired with a finite Cesaro verifier that evaluates the same
average directly from the closed-form correlations.

Exponential factors are always taken at exact integer phases
(l * n mod d^2), never by accumulating floating-point angles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

from . import correlations, euler, sieve
from .correlations import DENSITY
from .errors import DomainError
from .euler import DEFAULT_POLICY, TruncationPolicy
from .spectral import LambdaPoint, lambda_mul


@dataclass(frozen=True)
class GFunction:
    """The coefficient g(d) = (6/pi^2) mu(d) prod_{p|d} 1/(p^2-1)."""

    d: int
    value: float

    @classmethod
    def of(cls, d: "int | sieve.SquarefreeInt") -> "GFunction":
        sf = sieve.SquarefreeInt.of(d)
        return cls(sf.value, correlations.hall_coefficient(sf))


@dataclass(frozen=True)
class ProgressionQuery:
    """A residue class t mod d^2 with the derived gcd data."""

    d: int
    t: int
    g: int
    square_part: tuple[int, ...]

    @classmethod
    def of(cls, d: "int | sieve.SquarefreeInt", t: int) -> "ProgressionQuery":
        sf = sieve.SquarefreeInt.of(d)
        dsq = sf.value * sf.value
        if not 0 <= t <= dsq - 1:
            raise DomainError(f"residue t must lie in [0, {dsq - 1}], got {t}")
        g = gcd(t, dsq)
        square_part = sieve.factor_summary(g).square_primes if t else sf.primes
        return cls(sf.value, t, g, square_part)


def progression_average_limit(query: ProgressionQuery) -> float:
    """Limit of (1/L) sum_{l<=L} c_2(d^2 l + t).

    t = 0:  (6/pi^2)^2 prod_{p|d} p^2/(p^2-1)
    t > 0:  (6/pi^2)^2 prod_{p|d} p^2(p^2-2)/(p^2-1)^2
                      * prod over p^2 | gcd(t, d^2) of (p^2-1)/(p^2-2)
    """
    primes = sieve.SquarefreeInt.of(query.d).primes
    value = DENSITY * DENSITY
    if query.t == 0:
        for p in primes:
            value *= p * p / (p * p - 1)
        return value
    for p in primes:
        p2 = p * p
        value *= p2 * (p2 - 2) / ((p2 - 1) * (p2 - 1))
    for p in query.square_part:
        p2 = p * p
        value *= (p2 - 1) / (p2 - 2)
    return value


def cesaro_progression_average(
    query: ProgressionQuery, terms: int, policy: TruncationPolicy = DEFAULT_POLICY
) -> float:
    """(1/L) sum_{l=1..L} c_2(d^2 l + t), from the closed-form c_2 values."""
    if terms < 1:
        raise DomainError(f"term count must be >= 1, got {terms}")
    dsq = query.d * query.d
    values = correlations.c2_values(dsq * terms + query.t, policy)
    return float(values[dsq + query.t - 1 :: dsq][:terms].mean())


# ---------------------------------------------------------------------------
# exponential sums against c_2

def y2(lam: LambdaPoint) -> float:
    """Limit of (1/N) sum_n lam^n c_2(n): the square of g(d)."""
    return correlations.hall_coefficient(lam.d) ** 2


def cesaro_y2(
    lam: LambdaPoint, limit: int, policy: TruncationPolicy = DEFAULT_POLICY
) -> complex:
    """(1/N) sum_{n<=N} lam^n c_2(n) with exact integer phases.

    The sum is grouped by n mod d^2 (one bincount), then each residue class
    gets its exact root of unity.  The imaginary part tends to zero.
    """
    if limit < 1:
        raise DomainError(f"limit must be >= 1, got {limit}")
    values = correlations.c2_values(limit, policy)
    dsq = lam.dsq
    residues = np.arange(1, limit + 1, dtype=np.int64) % dsq
    sums = np.bincount(residues, weights=values, minlength=dsq)
    roots = np.exp(2j * math.pi * ((lam.l * np.arange(dsq, dtype=np.int64)) % dsq) / dsq)
    return complex(np.dot(roots, sums) / limit)


def y3(lam1: LambdaPoint, lam2: LambdaPoint) -> float:
    """Double-average limit of lam1^{n1} lam2^{n2} c_3(n1, n2):
    g(d1) g(d2) g(d) with e(l/d^2) = lam1 * lam2."""
    prod = lambda_mul(lam1, lam2)
    return (
        correlations.hall_coefficient(lam1.d)
        * correlations.hall_coefficient(lam2.d)
        * correlations.hall_coefficient(prod.d)
    )


def c3_grid(n1_max: int, n2_max: int, policy: TruncationPolicy = DEFAULT_POLICY) -> np.ndarray:
    """c_3(n1, n2) for 1 <= n1 <= n1_max, 1 <= n2 <= n2_max.

    Off the diagonal only primes with p^2 dividing n1, n2, or n1 - n2 can
    deviate from the generic factor (1 - 3/p^2), and those have p^2 bounded
    by the grid size; the diagonal is c_2 itself.
    """
    if n1_max < 1 or n2_max < 1:
        raise DomainError("grid dimensions must be >= 1")
    k3, _ = euler.product_all(3, policy)
    grid = np.full((n1_max, n2_max), k3)
    n1 = np.arange(1, n1_max + 1, dtype=np.int64)
    n2 = np.arange(1, n2_max + 1, dtype=np.int64)
    for p in sieve.primes_upto(isqrt(max(n1_max, n2_max))):
        p2 = int(p) * int(p)
        a0 = (n1 % p2 == 0)[:, None]
        b0 = (n2 % p2 == 0)[None, :]
        ab = (n1[:, None] - n2[None, :]) % p2 == 0
        # residue count of {0, n1, n2} mod p^2: the only multiple
        # coincidence is the all-equal one (a0 and b0 imply ab)
        distinct = 3.0 - a0 - b0 - ab + (a0 & b0)
        grid *= (p2 - distinct) / (p2 - 3.0)
    diag = min(n1_max, n2_max)
    idx = np.arange(diag)
    grid[idx, idx] = correlations.c2_values(diag, policy)
    return grid


def cesaro_y3(
    lam1: LambdaPoint,
    lam2: LambdaPoint,
    n1: int,
    n2: int,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> complex:
    """(1/(N1 N2)) sum lam1^{n1} lam2^{n2} c_3(n1, n2), exact phases."""
    if n1 < 1 or n2 < 1:
        raise DomainError("sample sizes must be >= 1")
    grid = c3_grid(n1, n2, policy)

    def phase_vector(lam: LambdaPoint, count: int) -> np.ndarray:
        ns = np.arange(1, count + 1, dtype=np.int64)
        return np.exp(2j * math.pi * ((lam.l * ns) % lam.dsq) / lam.dsq)

    v1 = phase_vector(lam1, n1)
    v2 = phase_vector(lam2, n2)
    return complex(v1 @ (grid @ v2) / (n1 * n2))


# ---------------------------------------------------------------------------
# counting identity for the spectrum layers

def lambda_count(d: "int | sieve.SquarefreeInt") -> int:
    """Number of spectrum points at level d: prod_{p|d} (p^2-1).

    For d = 1 the closed form (an empty product) counts the identity
    phase l = 0, so the result is 1.
    """
    sf = sieve.SquarefreeInt.of(d)
    count = 1
    for p in sf.primes:
        count *= p * p - 1
    return count


def lambda_count_bruteforce(d: "int | sieve.SquarefreeInt") -> int:
    """Direct enumeration twin of lambda_count: numerators l in [1, d^2)
    with gcd(l, d^2) square-free, plus l = 0 when d = 1."""
    sf = sieve.SquarefreeInt.of(d)
    if sf.value == 1:
        return 1
    dsq = sf.value * sf.value
    ls = np.arange(1, dsq, dtype=np.int64)
    g = np.gcd(ls, dsq)
    return int(sieve.mu2_indicator(1, dsq)[g - 1].sum())
