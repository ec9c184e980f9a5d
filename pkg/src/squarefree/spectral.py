"""The spectrum group of pair-correlation phases and its measure structure.

The spectrum is the multiplicative group of roots of unity e(l/d^2) with d
square-free and gcd(l, d^2) square-free.  Each element has exactly one such
representation, and that canonical form keeps the denominator d^2: reduction
to lowest terms is only an intermediate step when canonicalizing.  A reduced
phase a/b lies in the group iff b is cubefree, in which case d is the
radical of b and l = a d^2 / b.

The pure point spectral measure puts weight sigma_d/d^2 on each of the d^2
phases l/d^2 of every square-free d; eigenfunction norms, inner products,
and the sign of eigenfunction products all reduce to the coefficients
g(d) = (6/pi^2) mu(d) prod_{p|d} 1/(p^2-1).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator

import numpy as np

from . import correlations, sieve
from .correlations import DENSITY
from .errors import DomainError, NotInLambdaError
from .euler import DEFAULT_POLICY, TruncationPolicy


@dataclass(frozen=True)
class LambdaPoint:
    """Canonical spectrum element e(l/d^2)."""

    l: int
    dsq: int
    d: int

    def __post_init__(self) -> None:
        if self.d * self.d != self.dsq or not 0 <= self.l < self.dsq:
            raise DomainError(f"inconsistent point ({self.l}, {self.dsq}, {self.d})")

    @property
    def phase(self) -> Fraction:
        return Fraction(self.l, self.dsq)

    def is_identity(self) -> bool:
        return self.l == 0

    def power_phase(self, exponent: int) -> Fraction:
        """Exact phase of this point raised to an integer power."""
        return Fraction((self.l * exponent) % self.dsq, self.dsq)

    def complex_value(self, exponent: int = 1) -> complex:
        return cmath.exp(2j * math.pi * float(self.power_phase(exponent)))

    def __str__(self) -> str:
        return f"e({self.l}/{self.dsq})"


IDENTITY = LambdaPoint(0, 1, 1)


def lambda_canonicalize(numer: int, denom: int) -> LambdaPoint:
    """Canonical spectrum element of the phase numer/denom (mod 1).

    Raises NotInLambdaError when the reduced denominator is not cubefree,
    i.e. when no square-free d admits numer/denom = l/d^2 with the
    square-free gcd condition.
    """
    if denom < 1:
        raise DomainError(f"denominator must be >= 1, got {denom}")
    frac = Fraction(numer, denom) % 1
    a, b = frac.numerator, frac.denominator
    fs = sieve.factor_summary(b)
    d = 1
    for p in fs.distinct_primes:
        if b % (p * p * p) == 0:
            raise NotInLambdaError(
                f"{a}/{b} is not a spectrum phase: denominator has cube factor {p}^3"
            )
        d *= p
    dsq = d * d
    l = a * (dsq // b)
    g = gcd(l, dsq)
    if sieve.factor_summary(g).mobius == 0:
        # unreachable for cubefree b; guards the membership contract
        raise NotInLambdaError(f"{a}/{b}: gcd({l}, {dsq}) is not square-free")
    return LambdaPoint(l, dsq, d)


def lambda_mul(a: LambdaPoint, b: LambdaPoint) -> LambdaPoint:
    """Group product (phase addition mod 1).  The group is closed; any
    membership failure here is a bug and aborts loudly."""
    try:
        return lambda_canonicalize(a.l * b.dsq + b.l * a.dsq, a.dsq * b.dsq)
    except NotInLambdaError as exc:  # pragma: no cover
        raise AssertionError(f"group closure violated for {a} * {b}: {exc}") from exc


def lambda_inv(a: LambdaPoint) -> LambdaPoint:
    return lambda_canonicalize(-a.l, a.dsq)


def parse_phase(text: str) -> LambdaPoint:
    """Parse an exact 'L/DSQ' command-line phase (a bare integer means /1)."""
    parts = text.split("/")
    if len(parts) > 2:
        raise DomainError(f"malformed phase {text!r}: expected L/DSQ")
    try:
        numer = int(parts[0])
        denom = int(parts[1]) if len(parts) == 2 else 1
    except ValueError as exc:
        raise DomainError(f"malformed phase {text!r}: {exc}") from exc
    return lambda_canonicalize(numer, denom)


def enumerate_lambda(d_max: int) -> Iterator[LambdaPoint]:
    """All canonical points with d <= d_max, ascending in (d, l).

    For d > 1 the valid numerators are exactly the l in [1, d^2) whose gcd
    with d^2 is square-free; l = 0 belongs to d = 1 alone.
    """
    if d_max < 1:
        raise DomainError(f"d_max must be >= 1, got {d_max}")
    yield IDENTITY
    for d in sieve.squarefree_values_upto(d_max):
        if d == 1:
            continue
        dsq = d * d
        ls = np.arange(1, dsq, dtype=np.int64)
        g = np.gcd(ls, dsq)
        ok = sieve.mu2_indicator(1, dsq)[g - 1].astype(bool)
        for l in ls[ok]:
            yield LambdaPoint(int(l), dsq, d)


# ---------------------------------------------------------------------------
# spectral measure atoms

@dataclass(frozen=True)
class SpectralAtom:
    """One delta summand of the spectral measure: weight sigma_d/d^2 at the
    raw phase l/d^2 of layer d.  Raw phases of different layers can land on
    the same circle point; the measure adds them."""

    d: int
    l: int
    weight: float

    @property
    def point(self) -> LambdaPoint:
        return lambda_canonicalize(self.l, self.d * self.d)


def spectral_atoms(d_max: int, policy: TruncationPolicy = DEFAULT_POLICY) -> list[SpectralAtom]:
    """All atoms of layers d <= d_max; emitted mass is sum_{d<=d_max} sigma_d."""
    if d_max < 1:
        raise DomainError(f"d_max must be >= 1, got {d_max}")
    atoms = []
    for d in sieve.squarefree_values_upto(d_max):
        w = correlations.sigma_d(d, policy) / (d * d)
        atoms.extend(SpectralAtom(d, l, w) for l in range(d * d))
    return atoms


def spectral_mass_gap_bound(d_max: int) -> float:
    """Certified bound on the atom mass missing above d_max, from
    sigma_d < 1/d^2 and sum_{d>D} 1/d^2 < 1/(D-1)."""
    return 1.0 / max(1, d_max - 1)


# ---------------------------------------------------------------------------
# eigenfunction statistics

def eigen_norm_sq(lam: LambdaPoint) -> float:
    """Squared norm of the eigenfunction attached to lam: g(d)^2."""
    return correlations.hall_coefficient(lam.d) ** 2


def inner_product_x_theta(
    s: int, lam: LambdaPoint, limit: int, policy: TruncationPolicy = DEFAULT_POLICY
) -> complex:
    """Finite-average inner product of the s-th coordinate with the
    eigenfunction of lam: lam^s * (1/N) sum_{n<=N} lam^n c_2(n).

    Approaches lam^s g(d)^2 as the limit grows.
    """
    from .averages import cesaro_y2  # local import: averages builds on this module

    return lam.complex_value(s) * cesaro_y2(lam, limit, policy)


@lru_cache(maxsize=8)
def _g_magnitudes(limit: int) -> np.ndarray:
    """|g(d)| for d = 0..limit (0 at index 0 and at non-square-free d)."""
    arr = np.ones(limit + 1, dtype=np.float64)
    arr[0] = 0.0
    for p in sieve.primes_upto(limit):
        p = int(p)
        arr[p::p] *= 1.0 / (p * p - 1)
    for p in sieve.primes_upto(isqrt(limit)):
        p = int(p)
        arr[p * p :: p * p] = 0.0
    return DENSITY * arr


def parseval_partial(d_max: int) -> float:
    """sum over square-free d <= d_max of g(d)^2 prod_{p|d}(p^2-1).

    Each term collapses to (6/pi^2) |g(d)|; the full series sums to
    6/pi^2, the squared norm of a coordinate function.
    """
    if d_max < 1:
        raise DomainError(f"d_max must be >= 1, got {d_max}")
    mags = _g_magnitudes(d_max)
    return DENSITY * float(mags[1:].sum())


def approx_error_tail(d_cut: int) -> float:
    """Squared error of the rank-d_cut eigenfunction approximation of a
    coordinate: (6/pi^2) sum_{d>d_cut} |g(d)|.

    The sum is taken explicitly up to big = max(10^6, 100 d_cut) and closed
    with the certified bound |g(d)| <= 1/d^2, so the result is a slight
    overestimate of the true tail.
    """
    if d_cut < 1:
        raise DomainError(f"d_cut must be >= 1, got {d_cut}")
    big = max(10**6, 100 * d_cut)
    mags = _g_magnitudes(big)
    explicit = float(mags[d_cut + 1 :].sum())
    return DENSITY * (explicit + 1.0 / (big - 1))


def product_sign(a: LambdaPoint, b: LambdaPoint) -> int:
    """Sign relating the product of two normalized eigenfunctions to the
    eigenfunction of the product point: mu(d_a) mu(d_b) mu(d_ab)."""
    c = lambda_mul(a, b)
    exponent = sum(sieve.SquarefreeInt.of(x.d).omega for x in (a, b, c))
    return -1 if exponent % 2 else 1
