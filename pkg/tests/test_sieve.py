import random

import numpy as np
import pytest

from squarefree import sieve
from squarefree.errors import DomainError, RangeError


def brute_mu2(n: int) -> int:
    """Trial-division oracle: 1 iff no d^2 divides n for d >= 2."""
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return 0
        d += 1
    return 1


def brute_mu(n: int) -> int:
    if n == 1:
        return 1
    m, count, p = n, 0, 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e >= 2:
                return 0
            count += 1
        p += 1
    if m > 1:
        count += 1
    return -1 if count % 2 else 1


def test_first_ten_bits():
    block = sieve.sieve_squarefree(1, 10)
    assert list(block.indicator()) == [1, 1, 1, 0, 1, 1, 1, 0, 0, 1]


def test_popcount_to_100_matches_trial_division():
    expected = sum(brute_mu2(n) for n in range(1, 101))
    assert expected == 61
    assert sieve.sieve_squarefree(1, 100).popcount() == expected


def test_square_singleton():
    assert sieve.sieve_squarefree(49, 1).bit(0) == 0


def test_indicator_matches_oracle_everywhere_up_to_1e5():
    got = sieve.mu2_indicator(1, 10**5)
    expected = np.array([brute_mu2(n) for n in range(1, 10**5 + 1)], dtype=np.uint8)
    assert np.array_equal(got, expected)


def test_mobius_small_values():
    assert list(sieve.mobius_range(1, 6)) == [1, -1, -1, 0, -1, 1]
    assert sieve.mobius_range(30, 1)[0] == -1
    assert sieve.mobius_range(12, 1)[0] == 0


def test_mobius_against_oracle_spot_ranges():
    for start in (1, 997, 10**6 - 50, 10**9):
        got = sieve.mobius_range(start, 120)
        expected = [brute_mu(start + i) for i in range(120)]
        assert list(got) == expected


def test_mobius_and_mu2_consistency_to_1e5():
    mu = sieve.mobius_range(1, 10**5)
    mu2 = sieve.mu2_indicator(1, 10**5)
    assert np.array_equal(mu != 0, mu2 == 1)


def test_factor_summary_examples():
    one = sieve.factor_summary(1)
    assert (one.distinct_primes, one.square_primes, one.omega, one.mobius) == ((), (), 0, 1)
    big = sieve.factor_summary(2**10 * 3**7)
    assert big.distinct_primes == (2, 3) and big.omega == 2 and big.mobius == 0
    twelve = sieve.factor_summary(12)
    assert twelve.distinct_primes == (2, 3)
    assert twelve.square_primes == (2,)
    assert twelve.mobius == 0


def test_factor_summary_invariants_random():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randrange(1, 10**7)
        fs = sieve.factor_summary(n)
        assert fs.omega == len(fs.distinct_primes)
        if fs.square_primes:
            assert fs.mobius == 0
        else:
            assert fs.mobius == (-1) ** fs.omega
        product = 1
        for p in fs.distinct_primes:
            assert n % p == 0
            product *= p
        assert n % product == 0


def test_squarefree_int_rejects_squares():
    assert sieve.SquarefreeInt.of(30).primes == (2, 3, 5)
    with pytest.raises(DomainError):
        sieve.SquarefreeInt.of(12)


def test_square_part_of_square_recovers_prime_support():
    for n in (1, 2, 6, 30, 105, 2310):
        squared = sieve.factor_summary(n * n)
        assert squared.square_primes == sieve.factor_summary(n).distinct_primes


def test_mobius_multi_segment_path():
    length = sieve.SEGMENT + 64
    whole = sieve.mobius_range(1, length)
    assert len(whole) == length
    tail_start = sieve.SEGMENT - 32
    again = sieve.mobius_range(tail_start, 96)
    assert list(whole[tail_start - 1 : tail_start + 95]) == list(again)


def test_block_splits_are_invisible():
    rng = random.Random(12)
    for _ in range(20):
        start = rng.randrange(1, 10**6)
        length = rng.randrange(1, 5000)
        whole = sieve.sieve_squarefree(start, length)
        cut = rng.randrange(1, length) if length > 1 else 1
        left = sieve.sieve_squarefree(start, cut)
        right = sieve.sieve_squarefree(start + cut, length - cut)
        joined = np.concatenate([left.indicator(), right.indicator()])
        assert np.array_equal(whole.indicator(), joined)


def test_block_crossing_internal_segment_boundary():
    start = sieve.SEGMENT - 500
    block = sieve.sieve_squarefree(start, 1000)
    expected = sieve.mu2_indicator(start, 1000)
    assert np.array_equal(block.indicator(), expected)


def test_serialization_layout_and_roundtrip():
    block = sieve.sieve_squarefree(1, 10)
    raw = block.to_bytes()
    # 8-byte LE start, 8-byte LE length, bits LSB-first: 1,1,1,0,1,1,1,0 -> 0x77
    assert raw[:8] == (1).to_bytes(8, "little")
    assert raw[8:16] == (10).to_bytes(8, "little")
    assert raw[16] == 0b01110111
    assert raw[17] == 0b00000010  # bits 9,10 -> 0,1
    again = sieve.SieveBlock.from_bytes(raw)
    assert again == block
    with pytest.raises(DomainError):
        sieve.SieveBlock.from_bytes(raw[:-1])


def test_csv_export_lines():
    import io

    buf = io.StringIO()
    sieve.export_csv(8, 3, buf)
    assert buf.getvalue() == "n,mu,mu2\n8,0,0\n9,0,0\n10,1,1\n"


def test_range_errors():
    with pytest.raises(DomainError):
        sieve.sieve_squarefree(0, 5)
    with pytest.raises(DomainError):
        sieve.sieve_squarefree(1, 0)
    with pytest.raises(RangeError):
        sieve.sieve_squarefree(sieve.MAX_ENDPOINT, 2)


def test_high_range_block():
    # block far up the line, against the per-element oracle
    start = 10**9
    got = sieve.mu2_indicator(start, 200)
    expected = [brute_mu2(start + i) for i in range(200)]
    assert list(got) == expected


def test_quadratic_dirichlet_series_partials():
    # sum mu(n)/n^2 -> 1/zeta(2) and sum mu^2(n)/n^2 -> zeta(2)/zeta(4),
    # both with partial-sum error below 1/(L-1)
    import math

    limit = 10**6
    mu = sieve.mobius_range(1, limit).astype(np.float64)
    inv_sq = 1.0 / np.arange(1, limit + 1, dtype=np.float64) ** 2
    tail = 1.0 / (limit - 1)
    assert abs(float(np.sum(mu * inv_sq)) - 6 / math.pi**2) <= tail
    assert abs(float(np.sum((mu != 0) * inv_sq)) - 15 / math.pi**2) <= tail


def test_square_radical_range():
    got = sieve.square_radical_range(1, 50)
    for i, value in enumerate(got, start=1):
        expected = 1
        for p in (2, 3, 5, 7):
            if i % (p * p) == 0:
                expected *= p
        assert value == expected
