from fractions import Fraction

import pytest

from randlab.primality import (
    COMPOSITE,
    PROBABLY_PRIME,
    PrimelessIntervalError,
    algorithm_p_single,
    is_probable_prime,
    random_prime_in,
    witness_density,
)
from randlab.rng import SplitMix64


def sieve(limit):
    flags = bytearray([1]) * limit
    flags[0:2] = b"\x00\x00"
    i = 2
    while i * i < limit:
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
        i += 1
    return flags


def test_single_round_examples():
    assert algorithm_p_single(7, 2) is True
    assert algorithm_p_single(561, 2) is False  # witness for smallest Carmichael
    # x = n-1 always passes: (n-1)^q = n-1 for odd q
    assert algorithm_p_single(1729, 1728) is True


def test_single_round_validates_arguments():
    with pytest.raises(ValueError):
        algorithm_p_single(10, 3)
    with pytest.raises(ValueError):
        algorithm_p_single(7, 1)
    with pytest.raises(ValueError):
        algorithm_p_single(7, 7)


def test_no_false_negatives_exhaustive_small_primes():
    # Every base must pass for every prime: the condition is necessary.
    flags = sieve(10**4)
    for p in range(3, 10**4, 2):
        if not flags[p]:
            continue
        for x in range(2, p):
            assert algorithm_p_single(p, x) is True


def test_verdict_examples():
    v = is_probable_prime(561, 10, SplitMix64(42))
    assert v.answer == COMPOSITE
    v = is_probable_prime(1729, 10, SplitMix64(0))
    assert v.answer == COMPOSITE
    assert is_probable_prime(2, 5, SplitMix64(0)).answer == PROBABLY_PRIME
    assert is_probable_prime(0, 5, SplitMix64(0)).answer == COMPOSITE
    assert is_probable_prime(1, 5, SplitMix64(0)).answer == COMPOSITE


def test_verdict_error_bound_exact():
    for rounds in (1, 3, 10):
        v = is_probable_prime(97, rounds, SplitMix64(1))
        assert v.error_bound == Fraction(1, 4**rounds)
        assert v.error_bound <= Fraction(1, 4**v.rounds_used)


def test_verdict_rejects_zero_rounds():
    with pytest.raises(ValueError):
        is_probable_prime(97, 0, SplitMix64(0))


def test_verdict_deterministic_replay():
    for n in (561, 1729, 99991, 10**9 + 7):
        a = is_probable_prime(n, 10, SplitMix64(5))
        b = is_probable_prime(n, 10, SplitMix64(5))
        assert a == b


def test_agreement_with_sieve_below_10k():
    flags = sieve(10**4)
    for n in range(10**4):
        verdict = is_probable_prime(n, 20, SplitMix64(0))
        assert verdict.is_probably_prime == bool(flags[n]), n


def test_witness_density_examples():
    assert witness_density(9) == Fraction(1, 7)  # only x = 8 passes
    assert witness_density(15) == Fraction(1, 13)
    d561 = witness_density(561)
    assert d561 == Fraction(9, 559)
    assert d561 < Fraction(1, 4)


def test_witness_density_matches_per_base_scan():
    for n in (9, 15, 21, 25, 49, 91):
        expected = sum(algorithm_p_single(n, x) for x in range(2, n))
        assert witness_density(n) == Fraction(expected, n - 2)


def test_witness_density_validates():
    with pytest.raises(ValueError):
        witness_density(13)  # prime
    with pytest.raises(ValueError):
        witness_density(8)  # even
    with pytest.raises(ValueError):
        witness_density(7)  # too small
    with pytest.raises(ValueError):
        witness_density(10**6 + 1)  # over the scan guard


def test_random_prime_in_forced_value():
    assert random_prime_in(8, 12, 20, SplitMix64(0)) == 11


def test_random_prime_in_contract():
    rng = SplitMix64(31337)
    for _ in range(5):
        p = random_prime_in(10**9, 2 * 10**9, 24, rng)
        assert 10**9 < p < 2 * 10**9
        assert is_probable_prime(p, 64, SplitMix64(1)).is_probably_prime


def test_random_prime_in_primeless_interval():
    # (24, 28) contains only 25, 26, 27: all composite by trial division.
    with pytest.raises(PrimelessIntervalError):
        random_prime_in(24, 28, 20, SplitMix64(0))


def test_random_prime_in_validates():
    with pytest.raises(ValueError):
        random_prime_in(10, 10, 5, SplitMix64(0))
    with pytest.raises(ValueError):
        random_prime_in(8, 12, 0, SplitMix64(0))
