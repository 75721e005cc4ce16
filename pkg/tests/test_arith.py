import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parityforge.arith import (
    EVERYTHING,
    FACT_ONE,
    MAX_VALUE,
    Factorization,
    ResidueClass,
    crt_solve,
    factorize,
    is_prime,
    next_prime,
    sieve_primes,
    solve_linear_congruence,
    valuation,
)
from parityforge.errors import Incompatible

from _oracle import naive_factorize, naive_is_prime, naive_primes


def test_factorize_small_range_matches_trial_division():
    for x in range(1, 3000):
        assert factorize(x).pairs == tuple(naive_factorize(x))


def test_factorize_rejects_out_of_range():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(OverflowError):
        factorize(MAX_VALUE + 1)


def test_factorize_near_word_boundary():
    # Largest 63-bit value and the largest semiprime of two 32-bit primes.
    f = factorize(MAX_VALUE)
    assert f.value == MAX_VALUE
    assert f.pairs == ((7, 2), (73, 1), (127, 1), (337, 1), (92737, 1), (649657, 1))
    g = factorize(3037000453 * 3037000493)
    assert g.pairs == ((3037000453, 1), (3037000493, 1))


def test_is_prime_agrees_with_naive():
    for x in range(0, 5000):
        assert is_prime(x) == naive_is_prime(x), x


def test_is_prime_large_known_values():
    assert is_prime(9223372036854775783)  # largest prime below 2^63
    assert not is_prime(MAX_VALUE)
    assert is_prime(2**61 - 1)
    assert not is_prime(2**62 - 1)


@given(st.integers(min_value=1, max_value=MAX_VALUE))
@settings(max_examples=150, deadline=None)
def test_factorize_round_trip(x):
    f = factorize(x)
    assert f.value == x
    assert all(is_prime(p) for p in f.primes())
    assert all(e >= 1 for _, e in f.pairs)
    assert f.primes() == tuple(sorted(f.primes()))


def test_factorization_merge_and_stats():
    a = Factorization(((2, 3), (5, 1)))
    b = Factorization(((2, 1), (3, 2)))
    m = a * b
    assert m.pairs == ((2, 4), (3, 2), (5, 1))
    assert (m.omega, m.big_omega, m.divisor_count) == (3, 7, 30)
    assert m.pattern() == (4, 2, 1)
    assert m.stat("omega") == 3
    assert m.stat("d") == 30
    assert (FACT_ONE * a).pairs == a.pairs
    with pytest.raises(ValueError):
        m.stat("nope")


def test_factorization_rejects_malformed_pairs():
    with pytest.raises(ValueError):
        Factorization(((5, 1), (3, 1)))  # not ascending
    with pytest.raises(ValueError):
        Factorization(((3, 0),))


def test_valuation():
    assert valuation(48, 2) == 4
    assert valuation(48, 3) == 1
    assert valuation(48, 5) == 0
    assert valuation(1, 7) == 0


def test_residue_class_validation_and_members():
    cls = ResidueClass(3, 7)
    assert list(cls.members(4)) == [3, 10, 17, 24]
    assert list(cls.members(2, start=5)) == [38, 45]
    assert cls.contains(24) and not cls.contains(25)
    with pytest.raises(ValueError):
        ResidueClass(7, 7)
    with pytest.raises(ValueError):
        ResidueClass(0, 0)
    assert EVERYTHING.contains(12345)


def test_crt_coprime_and_overlapping_moduli():
    cls = crt_solve([(2, 3), (3, 5), (2, 7)])
    assert (cls.residue, cls.modulus) == (23, 105)
    # Overlapping moduli that agree on the shared factor.
    cls = crt_solve([(2, 4), (4, 6)])
    assert (cls.residue, cls.modulus) == (10, 12)
    with pytest.raises(Incompatible):
        crt_solve([(1, 4), (2, 6)])


@given(
    st.integers(min_value=0, max_value=10**6),
    st.lists(st.integers(min_value=1, max_value=50), min_size=1, max_size=6),
)
@settings(max_examples=200, deadline=None)
def test_crt_systems_built_from_a_point_contain_it(m, moduli):
    cls = crt_solve([(m % mod, mod) for mod in moduli])
    assert cls.contains(m)
    assert cls.modulus == math.lcm(*moduli)


def test_solve_linear_congruence():
    cls = solve_linear_congruence(4, 3, 49)
    assert cls.modulus == 49 and (4 * cls.residue - 3) % 49 == 0
    cls = solve_linear_congruence(6, 4, 10)  # gcd 2 divides 4
    assert cls.modulus == 5 and (6 * cls.residue - 4) % 10 == 0
    assert solve_linear_congruence(3, 2, 1) == EVERYTHING
    with pytest.raises(Incompatible):
        solve_linear_congruence(6, 3, 10)


def test_sieve_and_next_prime():
    assert sieve_primes(100) == naive_primes(100)
    assert sieve_primes(1) == []
    assert next_prime(1) == 2
    assert next_prime(13) == 17
    assert next_prime(89) == 97
