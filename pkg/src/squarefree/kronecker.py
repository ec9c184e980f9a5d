"""Truncated model of the product group prod_p Z/p^2 Z under the shift by
(1, 1, 1, ...), with exact character evaluation.

The group itself is infinite, but every character depends on finitely many
coordinates, so a truncation to the first m primes carries all characters
whose level is m-smooth.  A spectrum point e(l/d^2) decomposes uniquely as
sum over p | d of t_p/p^2 with 0 <= t_p < p^2; the matching character reads
those coordinates off a group element.  All phase arithmetic is exact
(integers mod p^2); floating point is banned in this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import sieve
from .errors import DomainError
from .spectral import LambdaPoint, enumerate_lambda


@dataclass(frozen=True)
class GroupElement:
    """Coordinates g_{p^2} in Z/p^2 Z over a finite prime basis."""

    primes: tuple[int, ...]
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.primes) != len(self.coords) or not self.primes:
            raise DomainError("basis and coordinates must align and be nonempty")
        for p, c in zip(self.primes, self.coords):
            if not 0 <= c < p * p:
                raise DomainError(f"coordinate {c} outside Z/{p * p}Z")


def basis_primes(m: int) -> tuple[int, ...]:
    """The first m primes."""
    if m < 1:
        raise DomainError(f"basis size must be >= 1, got {m}")
    limit = 16
    while True:
        ps = sieve.primes_upto(limit)
        if len(ps) >= m:
            return tuple(int(p) for p in ps[:m])
        limit *= 2


def zero_element(m: int = 25) -> GroupElement:
    primes = basis_primes(m)
    return GroupElement(primes, (0,) * len(primes))


def translate(g: GroupElement, steps: int) -> GroupElement:
    """Shift every coordinate by `steps` (negative allowed)."""
    coords = tuple((c + steps) % (p * p) for p, c in zip(g.primes, g.coords))
    return GroupElement(g.primes, coords)


@dataclass(frozen=True)
class CharacterSpec:
    """A character of the truncated group, as per-prime exponents t_p.

    Evaluating at g gives the exact phase sum_p t_p g_{p^2} / p^2 (mod 1);
    the attached spectrum point is its eigenvalue under the unit shift.
    """

    point: LambdaPoint
    exponents: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, point: LambdaPoint) -> "CharacterSpec":
        primes = sieve.SquarefreeInt.of(point.d).primes
        exps = []
        for p in primes:
            p2 = p * p
            co = point.dsq // p2
            t_p = (point.l * pow(co, -1, p2)) % p2
            exps.append((p, t_p))
        chi = cls(point, tuple(exps))
        assert chi.phase_shift() == point.phase, "decomposition mismatch"
        return chi

    def phase_shift(self) -> Fraction:
        """Phase advance per unit translation: sum_p t_p/p^2 mod 1."""
        total = Fraction(0)
        for p, t_p in self.exponents:
            total += Fraction(t_p, p * p)
        return total % 1


def character_eval(chi: CharacterSpec, g: GroupElement) -> Fraction:
    """Exact phase of the character at a group element, in [0, 1)."""
    index = {p: i for i, p in enumerate(g.primes)}
    total = Fraction(0)
    for p, t_p in chi.exponents:
        if p not in index:
            raise DomainError(
                f"group basis is missing prime {p} needed by character {chi.point}"
            )
        total += Fraction(t_p * g.coords[index[p]], p * p)
    return total % 1


def verify_eigen_relation(chi: CharacterSpec, g: GroupElement, n_steps: int) -> Fraction:
    """Max residual of phase(chi, g+k) - phase(chi, g) - k l/d^2 (mod 1)
    over 1 <= k <= n_steps.  Exact arithmetic: any nonzero value is a bug.
    """
    if n_steps < 1:
        raise DomainError(f"n_steps must be >= 1, got {n_steps}")
    base = character_eval(chi, g)
    eigen = chi.point.phase
    worst = Fraction(0)
    for k in range(1, n_steps + 1):
        residual = (character_eval(chi, translate(g, k)) - base - k * eigen) % 1
        if residual > Fraction(1, 2):
            residual = 1 - residual
        worst = max(worst, residual)
    return worst


@dataclass(frozen=True)
class SpectrumMatchReport:
    """Comparison of the two eigenvalue enumerations, level by level."""

    d_max: int
    levels: tuple[tuple[int, int, int, bool], ...]  # (d, group count, character count, equal)
    total: int
    all_equal: bool


def _character_phases(d: int) -> set[Fraction]:
    """Eigenvalue phases of all characters at exact level d: per-prime
    exponents t_p in [1, p^2) (t_p = 0 drops the prime from the level)."""
    primes = sieve.SquarefreeInt.of(d).primes
    phases = {Fraction(0)} if d == 1 else set()
    if d == 1:
        return phases
    stack = [(0, Fraction(0))]
    while stack:
        i, acc = stack.pop()
        if i == len(primes):
            phases.add(acc % 1)
            continue
        p2 = primes[i] ** 2
        for t in range(1, p2):
            stack.append((i + 1, acc + Fraction(t, p2)))
    return phases


def spectrum_match_report(d_max: int) -> SpectrumMatchReport:
    """Check that the spectrum group enumeration and the character
    eigenvalues coincide for every level d <= d_max."""
    if d_max < 1:
        raise DomainError(f"d_max must be >= 1, got {d_max}")
    by_level: dict[int, set[Fraction]] = {}
    for pt in enumerate_lambda(d_max):
        by_level.setdefault(pt.d, set()).add(pt.phase)
    levels = []
    total = 0
    all_equal = True
    for d in sorted(by_level):
        lam_phases = by_level[d]
        chi_phases = _character_phases(d)
        equal = lam_phases == chi_phases
        all_equal = all_equal and equal
        levels.append((d, len(lam_phases), len(chi_phases), equal))
        total += len(lam_phases)
    return SpectrumMatchReport(d_max, tuple(levels), total, all_equal)
