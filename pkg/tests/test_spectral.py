import itertools
import math
import random
from fractions import Fraction

import pytest

from squarefree import averages, correlations, sieve, spectral
from squarefree.correlations import DENSITY
from squarefree.errors import DomainError, NotInLambdaError


def test_canonicalize_identity_and_examples():
    assert spectral.lambda_canonicalize(0, 1) == spectral.IDENTITY
    point = spectral.lambda_canonicalize(13, 36)
    assert (point.l, point.dsq, point.d) == (13, 36, 6)
    with pytest.raises(NotInLambdaError):
        spectral.lambda_canonicalize(1, 8)


def test_canonical_form_keeps_square_denominator():
    # the phase 1/2 lives at level 2: reduction to lowest terms is only
    # an intermediate step
    point = spectral.lambda_canonicalize(1, 2)
    assert (point.l, point.dsq, point.d) == (2, 4, 2)
    assert spectral.lambda_canonicalize(2, 4) == point
    assert spectral.lambda_canonicalize(9, 36) == spectral.lambda_canonicalize(1, 4)


def test_canonicalize_wraps_and_negates():
    assert spectral.lambda_canonicalize(5, 4) == spectral.lambda_canonicalize(1, 4)
    assert spectral.lambda_canonicalize(-1, 4) == spectral.lambda_canonicalize(3, 4)


def test_mul_examples():
    e14 = spectral.lambda_canonicalize(1, 4)
    e19 = spectral.lambda_canonicalize(1, 9)
    e34 = spectral.lambda_canonicalize(3, 4)
    assert spectral.lambda_mul(e14, e19) == spectral.lambda_canonicalize(13, 36)
    assert spectral.lambda_mul(e14, e34).is_identity()
    doubled = spectral.lambda_mul(e14, e14)
    assert (doubled.l, doubled.dsq) == (2, 4)


def test_phase_parsing():
    assert spectral.parse_phase("1/4") == spectral.lambda_canonicalize(1, 4)
    assert spectral.parse_phase("0") == spectral.IDENTITY
    with pytest.raises(DomainError):
        spectral.parse_phase("x/4")
    with pytest.raises(NotInLambdaError):
        spectral.parse_phase("1/8")


def test_enumeration_counts():
    points = list(spectral.enumerate_lambda(6))
    assert len(points) == 60  # 1 + 3 + 8 + 24 + 24 for d = 1,2,3,5,6
    by_d = {}
    for p in points:
        by_d[p.d] = by_d.get(p.d, 0) + 1
    assert by_d == {1: 1, 2: 3, 3: 8, 5: 24, 6: 24}
    assert len(set(points)) == len(points)


def test_group_laws_exhaustive_d6():
    points = list(spectral.enumerate_lambda(6))
    universe = {(p.l, p.dsq) for p in points}
    for a in points:
        assert spectral.lambda_mul(a, spectral.IDENTITY) == a
        inv = spectral.lambda_inv(a)
        assert (inv.l, inv.dsq) in universe
        assert spectral.lambda_mul(a, inv).is_identity()
    for a, b in itertools.product(points, repeat=2):
        c = spectral.lambda_mul(a, b)
        assert c.phase == (a.phase + b.phase) % 1
        if c.d <= 6:
            assert (c.l, c.dsq) in universe


def test_associativity_sampled():
    rng = random.Random(2)
    points = list(spectral.enumerate_lambda(10))
    for _ in range(300):
        a, b, c = (rng.choice(points) for _ in range(3))
        left = spectral.lambda_mul(spectral.lambda_mul(a, b), c)
        right = spectral.lambda_mul(a, spectral.lambda_mul(b, c))
        assert left == right


def test_atoms_layers_and_mass():
    atoms1 = spectral.spectral_atoms(1)
    assert len(atoms1) == 1
    assert atoms1[0].weight == pytest.approx(correlations.sigma1())
    atoms2 = spectral.spectral_atoms(2)
    assert len(atoms2) == 5
    mass = sum(a.weight for a in atoms2)
    assert mass == pytest.approx(correlations.sigma_d(1) + correlations.sigma_d(2), rel=1e-12)
    # the l = 0 atom of layer 2 sits on the identity point
    zero_layer2 = [a for a in atoms2 if a.d == 2 and a.l == 0]
    assert zero_layer2[0].point == spectral.IDENTITY


def test_atom_mass_monotone_with_certified_gap():
    masses = []
    for d_max in (1, 2, 6, 20, 50):
        mass = sum(a.weight for a in spectral.spectral_atoms(d_max))
        masses.append(mass)
        assert mass < DENSITY
        assert DENSITY - mass <= spectral.spectral_mass_gap_bound(d_max)
    assert masses == sorted(masses)


def test_canonicalize_random_phases_keep_invariants():
    rng = random.Random(17)
    from math import gcd

    accepted = 0
    for _ in range(500):
        numer = rng.randrange(-500, 500)
        denom = rng.randrange(1, 500)
        try:
            point = spectral.lambda_canonicalize(numer, denom)
        except NotInLambdaError:
            # the reduced denominator must genuinely carry a cube
            b = (Fraction(numer, denom) % 1).denominator
            assert any(b % (p**3) == 0 for p in sieve.factor_summary(b).distinct_primes)
            continue
        accepted += 1
        assert point.phase == Fraction(numer, denom) % 1
        assert sieve.factor_summary(point.d).mobius != 0
        assert sieve.factor_summary(gcd(point.l, point.dsq)).mobius != 0
        if point.d > 1:
            assert point.l > 0
    assert accepted > 300


def test_atom_fourier_coefficients_recover_c2():
    # the k-th Fourier coefficient of the truncated atom measure equals
    # c_2(k) minus the layers above the cut: sum_{d<=D, d^2|k} sigma_d
    d_cut = 50
    atoms = spectral.spectral_atoms(d_cut)
    for k in (0, 1, 4, 9, 36, 49, 100):
        coeff = sum(
            a.weight * math.cos(2 * math.pi * ((k * a.l) % (a.d * a.d)) / (a.d * a.d))
            for a in atoms
        )
        target = correlations.c2_sum_form(k).value
        assert abs(coeff - target) <= 1.0 / (d_cut - 1)
        if 0 < k < d_cut**2:
            # every contributing layer d (d^2 | k) is inside the cut
            assert coeff == pytest.approx(target, abs=1e-9)


def test_eigen_norms():
    e14 = spectral.lambda_canonicalize(1, 4)
    assert spectral.eigen_norm_sq(e14) == pytest.approx((DENSITY / 3) ** 2, rel=1e-12)
    assert math.sqrt(spectral.eigen_norm_sq(e14)) == pytest.approx(2 / math.pi**2, rel=1e-12)
    # cross-checked by the Cesaro route
    ces = averages.cesaro_y2(e14, 10**5)
    assert math.sqrt(abs(ces)) == pytest.approx(2 / math.pi**2, abs=1e-3)


def test_inner_product_examples():
    got = spectral.inner_product_x_theta(0, spectral.IDENTITY, 10**5)
    assert got.real == pytest.approx(DENSITY**2, abs=1e-2)
    e14 = spectral.lambda_canonicalize(1, 4)
    rotated = spectral.inner_product_x_theta(1, e14, 10**6)
    # phase rotation by i: the value sits on the imaginary axis
    assert rotated.imag == pytest.approx(spectral.eigen_norm_sq(e14), abs=5e-3)
    assert abs(rotated.real) <= 5e-3
    # lam^4 = 1, so s = 4 reproduces s = 0 exactly
    assert spectral.inner_product_x_theta(4, e14, 10**4) == spectral.inner_product_x_theta(
        0, e14, 10**4
    )


def test_parseval_values_and_monotonicity():
    assert spectral.parseval_partial(1) == pytest.approx(DENSITY**2, rel=1e-12)
    previous = 0.0
    mask = sieve.mu2_indicator(1, 30)
    for d in range(1, 31):
        if not mask[d - 1]:
            continue
        value = spectral.parseval_partial(d)
        assert previous < value <= DENSITY + 1e-12
        previous = value
    assert DENSITY - spectral.parseval_partial(10**4) <= 1e-3


def test_parseval_term_identity():
    # each level contributes g(d)^2 prod (p^2 - 1) = (6/pi^2) |g(d)|
    for d in (2, 3, 6, 10):
        term = spectral.parseval_partial(d) - spectral.parseval_partial(d - 1)
        g = correlations.hall_coefficient(d)
        assert term == pytest.approx(g * g * averages.lambda_count(d), rel=1e-9)


def test_tail_monotone_and_scaling():
    for d_cut in (10, 100, 1000):
        assert spectral.approx_error_tail(2 * d_cut) < spectral.approx_error_tail(d_cut)
    scaled = [d * spectral.approx_error_tail(d) for d in (100, 1000, 10000)]
    assert max(scaled) / min(scaled) < 10


def test_tail_full_sum_identity():
    # (6/pi^2) sum_d |g(d)| telescopes to (6/pi^2)^2 zeta(2) = 6/pi^2
    total = spectral.approx_error_tail(1) + DENSITY * abs(correlations.hall_coefficient(1))
    assert total == pytest.approx(DENSITY, abs=2e-6)


def test_product_sign_examples():
    e14 = spectral.lambda_canonicalize(1, 4)
    e19 = spectral.lambda_canonicalize(1, 9)
    e34 = spectral.lambda_canonicalize(3, 4)
    assert spectral.product_sign(spectral.IDENTITY, spectral.IDENTITY) == 1
    assert spectral.product_sign(e14, e19) == 1  # mu(2) mu(3) mu(6)
    assert spectral.product_sign(e14, e34) == 1  # mu(2) mu(2) mu(1)
    e136 = spectral.lambda_canonicalize(1, 36)
    assert spectral.product_sign(e14, e136) == -1  # mu(2) mu(6) mu(6)


def test_sign_matches_y3():
    rng = random.Random(9)
    points = list(spectral.enumerate_lambda(6))
    for _ in range(25):
        a, b = rng.choice(points), rng.choice(points)
        eps = spectral.product_sign(a, b)
        value = averages.y3(a, b)
        magnitude = abs(
            correlations.hall_coefficient(a.d)
            * correlations.hall_coefficient(b.d)
            * correlations.hall_coefficient(spectral.lambda_mul(a, b).d)
        )
        assert value == pytest.approx(eps * magnitude, rel=1e-12)


def test_cocycle_identity_sampled():
    rng = random.Random(4)
    points = list(spectral.enumerate_lambda(6))
    for _ in range(50):
        a, b, c = (rng.choice(points) for _ in range(3))
        lhs = spectral.product_sign(a, b) * spectral.product_sign(spectral.lambda_mul(a, b), c)
        rhs = spectral.product_sign(b, c) * spectral.product_sign(a, spectral.lambda_mul(b, c))
        assert lhs == rhs
