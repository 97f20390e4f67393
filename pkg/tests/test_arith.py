import math
import random

import pytest

from kjparts.arith import (
    divisor_count,
    divisor_count_sieve,
    divisors,
    factorize,
    is_prime,
    is_square,
    odd_order_prime_count,
    sigma,
    sigma1_sieve,
    valuation,
)


def test_factorize_examples():
    assert factorize(1) == ()
    assert factorize(12) == ((2, 2), (3, 1))
    assert factorize(30) == ((2, 1), (3, 1), (5, 1))
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_reconstructs_and_primes_check():
    for n in range(1, 3000):
        f = factorize(n)
        assert math.prod(p ** e for p, e in f) == n
        assert all(is_prime(p) for p, _ in f)
        assert [p for p, _ in f] == sorted(p for p, _ in f)


def test_sigma_examples():
    assert sigma(0, 6) == 4
    assert sigma(1, 14) == 24
    assert sigma(1, 14) % 8 == 0
    assert sigma(1, 1) == 1
    with pytest.raises(ValueError):
        sigma(1, 0)


def test_sigma_matches_divisor_enumeration():
    for n in range(1, 500):
        divs = divisors(n)
        for r in (0, 1, 2):
            assert sigma(r, n) == sum(d ** r for d in divs)


def test_sigma_multiplicative_on_random_coprime_pairs():
    rng = random.Random(20314)
    checked = 0
    while checked < 200:
        m = rng.randint(2, 10_000)
        n = rng.randint(2, 10_000)
        if math.gcd(m, n) != 1:
            continue
        checked += 1
        for r in (0, 1, 2):
            assert sigma(r, m * n) == sigma(r, m) * sigma(r, n)


def test_valuation_examples():
    assert valuation(2, 48) == 4
    assert valuation(5, 7) == 0
    assert valuation(3, 27) == 3
    with pytest.raises(ValueError):
        valuation(4, 10)
    with pytest.raises(ValueError):
        valuation(2, 0)


def test_odd_order_prime_count():
    assert odd_order_prime_count(36) == 0
    assert odd_order_prime_count(30) == 3
    assert odd_order_prime_count(14) == 2
    assert divisor_count(14) % 4 == 0


def test_square_iff_no_odd_order_prime():
    for n in range(1, 5000):
        assert (odd_order_prime_count(n) == 0) == is_square(n)


def test_divisor_count_parity_classes_to_ten_thousand():
    d = divisor_count_sieve(10_000)
    for n in range(1, 10_001):
        if odd_order_prime_count(n) >= 2:
            assert d[n] % 4 == 0
        if d[n] % 4:
            assert odd_order_prime_count(n) <= 1
    # converse direction fails, e.g. at cubes of primes
    assert d[8] % 4 == 0 and odd_order_prime_count(8) == 1


def test_sigma1_vanishing_on_sixteen_n_plus_fourteen():
    s1 = sigma1_sieve(100_000)
    for m in range(14, 100_001, 16):
        assert s1[m] % 8 == 0, m


def test_divisor_sums_on_eight_n_plus_six():
    limit = 100_000
    s1 = sigma1_sieve(limit)
    d = divisor_count_sieve(limit)
    for m in range(6, limit + 1, 8):
        assert s1[m] % 4 == 0, m
        assert d[m] % 4 == 0, m


def test_sieves_match_pointwise_functions():
    s1 = sigma1_sieve(300)
    d = divisor_count_sieve(300)
    for n in range(1, 301):
        assert s1[n] == sigma(1, n)
        assert d[n] == divisor_count(n)
