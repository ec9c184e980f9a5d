import math

import numpy as np
import pytest

from squarefree import averages as av
from squarefree import correlations as co
from squarefree import sieve, spectral
from squarefree.correlations import DENSITY
from squarefree.errors import DomainError

E14 = spectral.lambda_canonicalize(1, 4)
E19 = spectral.lambda_canonicalize(1, 9)
E34 = spectral.lambda_canonicalize(3, 4)


def test_progression_limit_closed_forms():
    assert av.progression_average_limit(av.ProgressionQuery.of(1, 0)) == pytest.approx(
        DENSITY**2, rel=1e-12
    )
    assert abs(DENSITY**2 - 0.3695753612) <= 1e-10
    assert av.progression_average_limit(av.ProgressionQuery.of(2, 0)) == pytest.approx(
        DENSITY**2 * 4 / 3, rel=1e-12
    )
    assert av.progression_average_limit(av.ProgressionQuery.of(2, 1)) == pytest.approx(
        DENSITY**2 * 8 / 9, rel=1e-12
    )
    # gcd(2, 4) = 2 has empty square part: same limit as t = 1
    assert av.progression_average_limit(
        av.ProgressionQuery.of(2, 2)
    ) == av.progression_average_limit(av.ProgressionQuery.of(2, 1))


def test_progression_query_validation():
    with pytest.raises(DomainError):
        av.ProgressionQuery.of(2, 4)
    with pytest.raises(DomainError):
        av.ProgressionQuery.of(4, 0)
    q = av.ProgressionQuery.of(6, 9)
    assert q.g == 9 and q.square_part == (3,)


def test_cesaro_progression_matches_limits():
    for d, t in ((1, 0), (2, 0), (2, 1), (2, 2), (3, 4), (6, 9)):
        query = av.ProgressionQuery.of(d, t)
        closed = av.progression_average_limit(query)
        finite = av.cesaro_progression_average(query, 10**5)
        assert abs(finite - closed) <= 1e-2


def test_cesaro_progression_oracle_small():
    # direct summation oracle at small scale
    query = av.ProgressionQuery.of(2, 1)
    values = co.c2_values(4 * 500 + 1)
    oracle = float(np.mean([values[4 * l + 1 - 1] for l in range(1, 501)]))
    assert av.cesaro_progression_average(query, 500) == pytest.approx(oracle, rel=1e-12)


def test_y2_closed_forms():
    assert av.y2(spectral.IDENTITY) == pytest.approx(DENSITY**2, rel=1e-12)
    assert av.y2(E14) == pytest.approx((DENSITY / 3) ** 2, rel=1e-12)
    assert av.y2(E19) == pytest.approx((DENSITY / 8) ** 2, rel=1e-12)


def test_cesaro_y2_converges():
    got = av.cesaro_y2(spectral.IDENTITY, 10**5)
    assert got.real == pytest.approx(DENSITY**2, abs=1e-2)
    assert got.imag == 0.0
    got = av.cesaro_y2(E14, 10**6)
    assert got.real == pytest.approx(av.y2(E14), abs=5e-3)
    assert abs(got.imag) <= 5e-3


def test_cesaro_y2_all_levels_to_6():
    values = co.c2_values(10**6)  # warm the cache
    assert len(values) == 10**6
    for lam in spectral.enumerate_lambda(6):
        got = av.cesaro_y2(lam, 10**6)
        assert abs(got.real - av.y2(lam)) <= 5e-3
        assert abs(got.imag) <= 5e-3


def test_half_phase_is_a_spectrum_point():
    # e(1/2) = e(2/4) sits at level 2 and obeys the same limit law
    lam = spectral.lambda_canonicalize(1, 2)
    assert lam.d == 2
    got = av.cesaro_y2(lam, 10**6)
    assert got.real == pytest.approx(av.y2(lam), abs=5e-3)


def test_phase_outside_spectrum_rejected():
    with pytest.raises(DomainError):
        spectral.parse_phase("1/8")


def test_y2_consistency_with_progression_limits():
    # y2 equals the phase-weighted combination of the progression limits
    for lam in (E14, E19, spectral.lambda_canonicalize(5, 36)):
        dsq = lam.dsq
        acc = 0 + 0j
        for t in range(dsq):
            query = av.ProgressionQuery.of(lam.d, t)
            phase = math.e ** (2j * math.pi * ((lam.l * t) % dsq) / dsq)
            acc += phase * av.progression_average_limit(query)
        acc /= dsq
        assert acc.real == pytest.approx(av.y2(lam), rel=1e-9)
        assert abs(acc.imag) <= 1e-12


def test_y3_closed_forms():
    assert av.y3(spectral.IDENTITY, spectral.IDENTITY) == pytest.approx(
        DENSITY**3, rel=1e-12
    )
    # coprime levels: (6/pi^2)^3 mu(d1 d2) / prod (p^2-1)^2
    assert av.y3(E14, E19) == pytest.approx(DENSITY**3 / (9 * 64), rel=1e-12)
    assert av.y3(E14, E34) == pytest.approx((DENSITY / 3) ** 2 * DENSITY, rel=1e-12)


def test_c3_grid_against_direct_product():
    grid = av.c3_grid(40, 40)

    def c3_direct(n1: int, n2: int) -> float:
        value = 1.0
        for p in sieve.primes_upto(10**4):
            p2 = int(p) * int(p)
            value *= 1.0 - len({0, n1 % p2, n2 % p2}) / p2
        return value

    for n1, n2 in ((1, 2), (4, 8), (9, 18), (12, 12), (7, 35), (36, 4)):
        assert grid[n1 - 1, n2 - 1] == pytest.approx(c3_direct(n1, n2), rel=1e-4)


def test_c3_diagonal_is_c2():
    grid = av.c3_grid(50, 50)
    c2 = co.c2_values(50)
    assert np.allclose(np.diag(grid), c2, rtol=1e-12)


def test_cesaro_y3_converges():
    pairs = [
        (spectral.IDENTITY, spectral.IDENTITY),
        (E14, E19),
        (E14, E34),
    ]
    for lam1, lam2 in pairs:
        got = av.cesaro_y3(lam1, lam2, 2000, 2000)
        assert abs(got - av.y3(lam1, lam2)) <= 1e-2


def test_lambda_count_examples_and_bruteforce():
    assert av.lambda_count(1) == 1
    assert av.lambda_count(2) == 3
    assert av.lambda_count(6) == 24
    mask = sieve.mu2_indicator(1, 30)
    for d in range(1, 31):
        if mask[d - 1]:
            assert av.lambda_count(d) == av.lambda_count_bruteforce(d)
    with pytest.raises(DomainError):
        av.lambda_count(4)


def test_g_magnitude_bound():
    # |g(d)| <= (6/pi^2) (4/3)^omega(d) / d^2 for square-free d
    mask = sieve.mu2_indicator(1, 10**4)
    for d in range(1, 10**4 + 1):
        if not mask[d - 1]:
            continue
        fs = sieve.factor_summary(d)
        bound = DENSITY * (4 / 3) ** fs.omega / (d * d)
        assert abs(co.hall_coefficient(d)) <= bound * (1 + 1e-12)


def test_gfunction_record():
    g6 = av.GFunction.of(6)
    assert g6.value == pytest.approx(DENSITY / 24, rel=1e-12)
    assert g6.d == 6
