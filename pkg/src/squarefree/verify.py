"""Self-contained verification suites combining every module.

Each check returns a CheckResult; the `quick` profile covers the cheap
exact checks, `full` adds the large empirical counts and Cesaro limits.
Checks call into the other modules through their module objects so a
deliberately broken operation (mutation testing) is caught end to end.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import averages, correlations, density, kronecker, sieve, spectral
from .correlations import DENSITY


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float


def _run(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    begin = time.perf_counter()
    ok, detail = fn()
    return CheckResult(name, ok, detail, time.perf_counter() - begin)


# ---------------------------------------------------------------------------
# criterion checks

def check_density_bounds(
    n_values: tuple[int, ...] = (100, 1000, 10**4, 10**5, 10**6),
) -> CheckResult:
    """|count/N - alpha(S)/zeta(2)| <= C(S)/sqrt(N) for the five prime sets."""

    def body() -> tuple[bool, str]:
        sets = ((), (2,), (3,), (2, 3), (2, 3, 5))
        worst = math.inf
        for s in sets:
            for n in n_values:
                rep = density.restricted_count(s, n)
                worst = min(worst, rep.margin)
                if not rep.bound_holds:
                    return False, f"bound fails for S={s}, N={n}: margin {rep.margin:.3e}"
        return True, f"{len(sets) * len(n_values)} cases, smallest margin {worst:.3e}"

    return _run("density explicit bound", body)


def check_cross_method_c2(k_max: int = 10**4, rel_tol: float = 1e-9) -> CheckResult:
    """Prime product vs sigma_d sum for every 0 <= k <= k_max."""

    def body() -> tuple[bool, str]:
        worst = 0.0
        for k in range(k_max + 1):
            prod = correlations.mirsky_correlation([k] if k else [0]).value
            summed = correlations.c2_sum_form(k).value
            rel = abs(prod - summed) / summed
            worst = max(worst, rel)
            if rel > rel_tol:
                return False, f"k={k}: relative gap {rel:.3e} > {rel_tol:.1e}"
        return True, f"max relative gap {worst:.3e} over k <= {k_max}"

    return _run("cross-method pair correlation", body)


def check_hall_partial(k_max: int = 50, s_max: int = 10, tol: float = 1e-3) -> CheckResult:
    """Partial series sums against the closed-form pair correlation.

    Lags run over 1..k_max: at lag 0 the series has no cancellation and
    converges like 1/s_max (its partial sums are the Parseval sums, checked
    separately at much larger depth).
    """

    def body() -> tuple[bool, str]:
        worst = 0.0
        for k in range(1, k_max + 1):
            target = correlations.c2_sum_form(k).value
            got = correlations.hall_series_partial([k], s_max)
            gap = abs(got - target)
            worst = max(worst, gap)
            if gap > tol:
                return False, f"k={k}: series gap {gap:.3e} > {tol:.1e}"
        return True, f"max series gap {worst:.3e} at s_max={s_max}, lags 1..{k_max}"

    return _run("series partial sums", body)


def check_constants(digit_tol: float = 1e-10, cesaro_tol: float = 1e-2) -> CheckResult:
    """Ten-digit constants plus the Cesaro mean of c_2 at L = 10^6."""

    def body() -> tuple[bool, str]:
        targets = [
            ("density", correlations.mirsky_correlation([0]).value, 0.6079271018),
            ("sigma_1", correlations.sigma1(), 0.3226340989),
            ("mean c_2", DENSITY**2, 0.3695753612),
        ]
        for name, got, expected in targets:
            if abs(got - expected) > digit_tol:
                return False, f"{name}: {got!r} vs {expected} beyond {digit_tol:.0e}"
        mean = float(correlations.c2_values(10**6).mean())
        if abs(mean - DENSITY**2) > cesaro_tol:
            return False, f"Cesaro mean {mean} off by {abs(mean - DENSITY**2):.3e}"
        return True, f"3 constants to 10 digits; Cesaro mean gap {abs(mean - DENSITY**2):.2e}"

    return _run("reference constants", body)


_LEVEL_TABLE = {
    1: (6, 1), 2: (2, 1), 3: (3, 4), 5: (1, 4), 6: (1, 4), 7: (1, 8),
    10: (1, 12), 11: (1, 20), 13: (1, 28), 14: (1, 24), 15: (1, 32), 17: (1, 48),
}


def check_level_set_table() -> CheckResult:
    """Exact rational level-set densities for d <= 17 and the 99% mass mark."""

    def body() -> tuple[bool, str]:
        from fractions import Fraction

        for d, (num, den) in _LEVEL_TABLE.items():
            got = correlations.level_set_coefficient(d)
            if got != Fraction(num, den):
                return False, f"d={d}: coefficient {got} != {num}/{den}"
        total = sum(
            correlations.level_set_density(d) for d in sieve.squarefree_values_upto(42)
        )
        if not total > 0.99:
            return False, f"mass through d=42 is {total:.6f}, not above 0.99"
        return True, f"12 exact table entries; mass through d=42 is {total:.4f}"

    return _run("level-set densities", body)


def check_cesaro_y2(limit: int = 10**6, tol: float = 5e-3) -> CheckResult:
    """Exponential sums at N = 10^6 against g(d)^2 for four spectrum points."""

    def body() -> tuple[bool, str]:
        phases = [(0, 1), (1, 4), (1, 9), (5, 36)]
        worst = 0.0
        for num, den in phases:
            lam = spectral.lambda_canonicalize(num, den)
            got = averages.cesaro_y2(lam, limit)
            target = averages.y2(lam)
            gap = abs(got.real - target)
            worst = max(worst, gap, abs(got.imag))
            if gap > tol or abs(got.imag) > tol:
                return False, f"{lam}: gap {gap:.2e}, imag {got.imag:.2e}"
        return True, f"4 points at N={limit}: worst deviation {worst:.2e}"

    return _run("exponential sums (pair)", body)


def check_cesaro_y3(samples: int = 2000, tol: float = 1e-2) -> CheckResult:
    """Double exponential sums against g(d1) g(d2) g(d) for five fixed pairs."""

    def body() -> tuple[bool, str]:
        canon = spectral.lambda_canonicalize
        pairs = [
            ((0, 1), (0, 1)),
            ((0, 1), (1, 4)),
            ((1, 4), (1, 9)),
            ((1, 4), (3, 4)),
            ((1, 9), (2, 9)),
        ]
        worst = 0.0
        for a, b in pairs:
            lam1, lam2 = canon(*a), canon(*b)
            got = averages.cesaro_y3(lam1, lam2, samples, samples)
            target = averages.y3(lam1, lam2)
            gap = abs(got - target)
            worst = max(worst, gap)
            if gap > tol:
                return False, f"{lam1},{lam2}: gap {gap:.2e} > {tol:.0e}"
        return True, f"5 pairs at {samples}x{samples}: worst gap {worst:.2e}"

    return _run("exponential sums (triple)", body)


def check_lambda_group(d_max: int = 6, cocycle_samples: int = 50, seed: int = 7) -> CheckResult:
    """Exhaustive group laws for d <= d_max plus sampled sign-cocycle checks."""

    def body() -> tuple[bool, str]:
        points = list(spectral.enumerate_lambda(d_max))
        index = {(p.l, p.dsq) for p in points}
        for a in points:
            inv = spectral.lambda_inv(a)
            if (inv.l, inv.dsq) not in index:
                return False, f"inverse of {a} escapes the enumeration"
            if not spectral.lambda_mul(a, inv).is_identity():
                return False, f"{a} * {inv} is not the identity"
        for a, b in itertools.product(points, repeat=2):
            c = spectral.lambda_mul(a, b)
            if (c.l, c.dsq) not in index and c.d <= d_max:
                return False, f"{a} * {b} = {c} escapes the enumeration"
        rng = random.Random(seed)
        for _ in range(cocycle_samples):
            a, b, c = (rng.choice(points) for _ in range(3))
            lhs = spectral.product_sign(a, b) * spectral.product_sign(spectral.lambda_mul(a, b), c)
            rhs = spectral.product_sign(b, c) * spectral.product_sign(a, spectral.lambda_mul(b, c))
            if lhs != rhs:
                return False, f"cocycle fails for {a}, {b}, {c}"
        # associativity, exhaustively on the enumerated points
        for a, b, c in itertools.product(points, repeat=3):
            left = spectral.lambda_mul(spectral.lambda_mul(a, b), c)
            right = spectral.lambda_mul(a, spectral.lambda_mul(b, c))
            if left != right:
                return False, f"associativity fails for {a}, {b}, {c}"
        return True, f"{len(points)} points: closure, inverses, associativity, {cocycle_samples} cocycles"

    return _run("spectrum group laws", body)


def check_parseval(d_max: int = 10**4, gap_tol: float = 1e-3) -> CheckResult:
    """Monotone Parseval partial sums approaching 6/pi^2."""

    def body() -> tuple[bool, str]:
        previous = 0.0
        mask = sieve.mu2_indicator(1, 64)
        for d in range(1, 65):
            if not mask[d - 1]:
                continue
            value = spectral.parseval_partial(d)
            if not value > previous:
                return False, f"partial sum not increasing at d={d}"
            previous = value
        full = spectral.parseval_partial(d_max)
        if full > DENSITY + 1e-12:
            return False, f"partial sum {full} exceeds the limit"
        gap = DENSITY - full
        if gap > gap_tol:
            return False, f"gap {gap:.3e} above {gap_tol:.0e} at D={d_max}"
        return True, f"increasing; gap {gap:.2e} at D={d_max}"

    return _run("Parseval partial sums", body)


def check_counting_identity(d_max: int = 30) -> CheckResult:
    """Closed-form level counts against brute-force enumeration."""

    def body() -> tuple[bool, str]:
        checked = 0
        for d in sieve.squarefree_values_upto(d_max):
            if averages.lambda_count(d) != averages.lambda_count_bruteforce(d):
                return False, f"count mismatch at d={d}"
            checked += 1
        return True, f"{checked} square-free levels agree"

    return _run("level counting identity", body)


def check_spectrum_match(d_max: int = 30, characters: int = 20, steps: int = 1000) -> CheckResult:
    """Spectrum equality of the two enumerations plus exact eigen residuals."""

    def body() -> tuple[bool, str]:
        report = kronecker.spectrum_match_report(d_max)
        if not report.all_equal:
            bad = [lvl for lvl in report.levels if not lvl[3]]
            return False, f"eigenvalue sets differ at levels {bad}"
        points = list(spectral.enumerate_lambda(12))
        rng = random.Random(11)
        sample = rng.sample(points, min(characters, len(points)))
        element = kronecker.zero_element(8)
        element = kronecker.translate(element, 12345)
        for pt in sample:
            chi = kronecker.CharacterSpec.of(pt)
            residual = kronecker.verify_eigen_relation(chi, element, steps)
            if residual != 0:
                return False, f"nonzero residual {residual} for {pt}"
        return True, (
            f"{report.total} eigenvalues match through d={d_max}; "
            f"{len(sample)} characters exact over {steps} steps"
        )

    return _run("spectrum match", body)


def check_negative_control(n_values: tuple[int, ...] = (10**3, 10**4, 10**5, 10**6)) -> CheckResult:
    """Lags 1,2,3 must vanish both in closed form and empirically."""

    def body() -> tuple[bool, str]:
        closed = correlations.mirsky_correlation([1, 2, 3])
        if closed.value != 0.0:
            return False, f"closed form gives {closed.value}, not 0"
        for n in n_values:
            emp = correlations.empirical_correlation([1, 2, 3], n)
            if emp.value != 0.0:
                return False, f"empirical count at N={n} gives {emp.value}"
        return True, f"exactly zero, closed form and at N in {n_values}"

    return _run("negative control (1,2,3)", body)


def check_empirical_convergence(limit: int = 10**7, k_max: int = 20, tol: float = 1e-2) -> CheckResult:
    """Empirical pair correlations at large N against the closed form."""

    def body() -> tuple[bool, str]:
        worst = 0.0
        for k in range(k_max + 1):
            lags = [k] if k else [0]
            emp = correlations.empirical_correlation(lags, limit).value
            closed = correlations.mirsky_correlation(lags).value
            gap = abs(emp - closed)
            worst = max(worst, gap)
            if gap > tol:
                return False, f"k={k}: gap {gap:.3e} > {tol:.0e}"
        return True, f"max gap {worst:.2e} at N={limit}"

    return _run("empirical convergence", body)


def check_levelset_empirics(limit: int = 10**6, tol: float = 5e-3) -> CheckResult:
    """Frequency of square-full support classes against the closed densities."""

    def body() -> tuple[bool, str]:
        radicals = sieve.square_radical_range(1, limit)
        worst = 0.0
        for d in (1, 2, 3):
            freq = float(np.count_nonzero(radicals == d)) / limit
            target = correlations.level_set_density(d)
            gap = abs(freq - target)
            worst = max(worst, gap)
            if gap > tol:
                return False, f"d={d}: gap {gap:.3e} > {tol:.0e}"
        return True, f"classes d=1,2,3 within {worst:.2e} at N={limit}"

    return _run("level-set empirics", body)


def check_progression_averages(d_max: int = 10, terms: int = 10**5, tol: float = 1e-2) -> CheckResult:
    """Cesaro progression averages against their closed limits, all residues."""

    def body() -> tuple[bool, str]:
        worst = 0.0
        cases = 0
        for d in sieve.squarefree_values_upto(d_max):
            for t in range(d * d):
                query = averages.ProgressionQuery.of(d, t)
                gap = abs(
                    averages.cesaro_progression_average(query, terms)
                    - averages.progression_average_limit(query)
                )
                worst = max(worst, gap)
                cases += 1
                if gap > tol:
                    return False, f"d={d}, t={t}: gap {gap:.3e} > {tol:.0e}"
        return True, f"{cases} residue classes within {worst:.2e} at L={terms}"

    return _run("progression averages", body)


# ---------------------------------------------------------------------------
# profiles

QUICK_CHECKS: tuple[Callable[[], CheckResult], ...] = (
    lambda: check_density_bounds((100, 1000, 10**4)),
    check_cross_method_c2,
    check_lambda_group,
    check_negative_control,
    check_level_set_table,
    check_counting_identity,
)

FULL_CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_density_bounds,
    check_cross_method_c2,
    check_constants,
    check_level_set_table,
    check_cesaro_y2,
    check_cesaro_y3,
    check_lambda_group,
    check_parseval,
    check_counting_identity,
    check_spectrum_match,
    check_negative_control,
    check_empirical_convergence,
    check_levelset_empirics,
    check_progression_averages,
)


def run_profile(profile: str) -> list[CheckResult]:
    if profile == "quick":
        checks = QUICK_CHECKS
    elif profile == "full":
        checks = FULL_CHECKS
    else:
        raise ValueError(f"unknown profile {profile!r}; expected quick or full")
    return [fn() for fn in checks]
