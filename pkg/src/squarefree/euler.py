"""Euler products over primes with certified truncation control.

Everything closed-form in this package reduces to products of the shape
prod_p (1 - a/p^2), taken over all primes or over the primes beyond some
starting point.  Two evaluation modes are offered through
:class:`TruncationPolicy`:

* ``fixed_cutoff``: multiply the factors for p <= cutoff and certify the
  dropped tail with the cheap bound

      1 - prod_{p>P}(1 - a/p^2) <= a / ((1 - a/P^2) (P - 1)),

  which follows from -log(1-x) <= x/(1-x) and sum_{n>P} 1/n^2 < 1/(P-1).
  Loose but honest; good to ~1e-5 at the default cutoff.

* ``target_tolerance``: additionally evaluate the analytic tail

      prod_{p>P}(1 - a/p^2)
          = exp(-sum_{j>=1} (a^j/j) (PrimeZeta(2j) - sum_{p<=P} p^{-2j})),

  truncating the j-series once its certified remainder is negligible.
  The reported bound is that remainder plus a float-rounding margin and
  sits far below the default target of 1e-10, so ten-digit constants come
  out of a 1e5 prime table.

Partial sums over primes are compensated (Kahan) so the rounding margin
is a few ulp, not cutoff-many ulp.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from . import sieve
from .errors import PolicyError, PrecisionError

FIXED_CUTOFF = "fixed_cutoff"
TARGET_TOLERANCE = "target_tolerance"

#: Folded into every certified bound to cover float64 rounding of the
#: compensated sums, the exp, and the final multiplies.
FLOAT_MARGIN = 1e-13

_SERIES_STOP = 1e-25


@dataclass(frozen=True)
class TruncationPolicy:
    """Prime cutoff / target tolerance controlling Euler-product tails."""

    mode: str = TARGET_TOLERANCE
    cutoff: int = 100_000
    tolerance: float | None = 1e-10

    def __post_init__(self) -> None:
        if self.mode not in (FIXED_CUTOFF, TARGET_TOLERANCE):
            raise PolicyError(f"unknown truncation mode {self.mode!r}")
        if self.cutoff < 3:
            raise PolicyError(f"cutoff must be >= 3, got {self.cutoff}")
        if self.tolerance is None:
            if self.mode == TARGET_TOLERANCE:
                raise PolicyError("target_tolerance mode requires a tolerance")
        elif not self.tolerance > 0:
            raise PolicyError(f"tolerance must be positive, got {self.tolerance}")

    @classmethod
    def fixed(cls, cutoff: int, tolerance: float | None = None) -> "TruncationPolicy":
        return cls(mode=FIXED_CUTOFF, cutoff=cutoff, tolerance=tolerance)

    @classmethod
    def with_tolerance(cls, tolerance: float, cutoff: int = 100_000) -> "TruncationPolicy":
        return cls(mode=TARGET_TOLERANCE, cutoff=cutoff, tolerance=tolerance)


DEFAULT_POLICY = TruncationPolicy()


def plain_tail_bound(a: int, cutoff: int) -> float:
    """Certified relative weight of prod_{p>cutoff}(1 - a/p^2) below 1."""
    return (a / (1.0 - a / cutoff**2)) / (cutoff - 1)


@lru_cache(maxsize=64)
def _prime_zeta(s: int) -> float:
    with mpmath.workdps(30):
        return float(mpmath.primezeta(s))


def _compensated_suffix(terms: np.ndarray) -> np.ndarray:
    """suffix[i] = sum_{j >= i} terms[j], Kahan-compensated."""
    n = len(terms)
    suffix = np.empty(n + 1)
    suffix[n] = 0.0
    total = 0.0
    carry = 0.0
    for i in range(n - 1, -1, -1):
        y = float(terms[i]) - carry
        t = total + y
        carry = (t - total) - y
        total = t
        suffix[i] = total
    return suffix


def _tail_beyond_cutoff(a: int, cutoff: int, pf: np.ndarray) -> tuple[float, float]:
    """log prod_{p>cutoff}(1 - a/p^2) and the certified remainder bound."""
    log_tail = 0.0
    j = 1
    while True:
        gap = _prime_zeta(2 * j) - math.fsum(pf ** (-2.0 * j))
        if gap < 0.0:  # machine-level cancellation floor
            gap = 0.0
        log_tail -= (a**j / j) * gap
        j += 1
        # remainder of the j-series, bounded via sum_{n>P} n^{-2j} <= P^(1-2j)/(2j-1)
        head = (a**j / (j * (2 * j - 1))) * cutoff ** (1 - 2 * j)
        if head < _SERIES_STOP or j > 40:
            break
    dropped = head / (1.0 - a / cutoff**2)
    return log_tail, dropped + FLOAT_MARGIN


@lru_cache(maxsize=32)
def _product_data(a: int, cutoff: int):
    primes = sieve.primes_upto(cutoff)
    pf = primes.astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.log1p(-a / (pf * pf))
    # factors <= 0 (p^2 <= a) sit below every legal query point; blank them
    terms[primes * primes <= a] = 0.0
    suffix = _compensated_suffix(terms)
    log_tail, tail_cert = _tail_beyond_cutoff(a, cutoff, pf)
    return primes, suffix, log_tail, tail_cert


def product_beyond(a: int, above: int, policy: TruncationPolicy = DEFAULT_POLICY) -> tuple[float, float]:
    """prod over primes p > above of (1 - a/p^2), with certified bound.

    Callers must rule out nonpositive factors first: every prime beyond
    `above` needs p^2 > a (the exact-zero case p^2 == a is the caller's
    short circuit).
    """
    if policy.cutoff**2 <= a:
        raise PolicyError(
            f"factor order {a} needs a cutoff P with P^2 > {a}, got {policy.cutoff}"
        )
    if above >= policy.cutoff:
        # the whole prime table sits at or below the start: nothing to
        # multiply, only the tail beyond `above` remains
        if policy.mode == FIXED_CUTOFF:
            return 1.0, plain_tail_bound(a, above) + FLOAT_MARGIN
        pf = sieve.primes_upto(above).astype(np.float64)
        log_tail, tail_cert = _tail_beyond_cutoff(a, above, pf)
        if tail_cert > policy.tolerance:
            raise PrecisionError(
                f"certified bound {tail_cert:.3e} exceeds target {policy.tolerance:.3e}"
            )
        return math.exp(log_tail), tail_cert
    primes, suffix, log_tail, tail_cert = _product_data(a, policy.cutoff)
    i0 = int(np.searchsorted(primes, above, side="right"))
    if i0 < len(primes) and int(primes[i0]) ** 2 <= a:
        raise PolicyError(
            f"product over p > {above} of (1 - {a}/p^2) has a nonpositive factor"
        )
    if policy.mode == FIXED_CUTOFF:
        value = math.exp(float(suffix[i0]))
        bound = plain_tail_bound(a, policy.cutoff) + FLOAT_MARGIN
        if policy.tolerance is not None and bound > policy.tolerance:
            raise PrecisionError(
                f"fixed cutoff {policy.cutoff} certifies only {bound:.3e}, "
                f"above the requested {policy.tolerance:.3e}"
            )
        return value, bound
    if tail_cert > policy.tolerance:
        raise PrecisionError(
            f"certified bound {tail_cert:.3e} exceeds target {policy.tolerance:.3e}"
        )
    return math.exp(float(suffix[i0]) + log_tail), tail_cert


def product_all(a: int, policy: TruncationPolicy = DEFAULT_POLICY) -> tuple[float, float]:
    """prod over all primes of (1 - a/p^2); requires a < 4 to stay positive."""
    if a >= 4:
        raise PolicyError(f"product over all primes needs a < 4, got {a}")
    return product_beyond(a, 1, policy)
