from math import gcd

import pytest

from gcnprime.baselines import trusted_is_prime
from gcnprime.bigarith import DomainError, multiplicative_order, sieve_primes
from gcnprime.divisibility import (
    build_patterns,
    divides_gcn,
    prop1_index,
    prop2_extend,
    prop3_bound,
    sieve_filter,
    sieve_pattern,
)
from gcnprime.core import gcn_value


def test_prop1_examples():
    assert prop1_index(3, 1, 5) == 7
    assert gcn_value(3, 7) % 5 == 0  # 15310
    assert prop1_index(2, 1, 3) == 1
    assert gcn_value(2, 1) == 3
    assert prop1_index(2, 2, 3) == 2
    assert gcn_value(2, 2) == 9


def test_prop1_domain():
    with pytest.raises(DomainError):
        prop1_index(10, 1, 5)  # p | b
    with pytest.raises(DomainError):
        prop1_index(2, 1, 2)  # index (2-1)*1 - 1 = 0 below range


def test_prop2_examples():
    assert prop2_extend(2, 1, 3, 2) == [7, 13]
    assert gcn_value(2, 7) % 3 == 0
    assert gcn_value(2, 13) % 3 == 0
    assert prop2_extend(3, 7, 5, 1) == [27]
    assert gcn_value(3, 27) % 5 == 0
    assert prop2_extend(2, 1, 3, 0) == []


def test_prop2_domain():
    with pytest.raises(DomainError):
        prop2_extend(2, 3, 3, 1)  # 3 does not divide C_2(3) = 25
    with pytest.raises(DomainError):
        prop2_extend(6, 1, 3, 1)  # p | b


def test_prop3_examples():
    assert prop3_bound(2, 4) == 8
    assert prop3_bound(1, 2) == 3
    assert prop3_bound(2, 3) == 17
    with pytest.raises(DomainError):
        prop3_bound(4, 4)


def test_prop3_gcd_divides_bound_brute():
    for n in range(1, 8):
        for m in range(1, n):
            bound = prop3_bound(n, m)
            for b in range(2, 201):
                g = gcd(gcn_value(b, n), gcn_value(b, m))
                assert bound % g == 0


def test_sieve_pattern_examples():
    pat = sieve_pattern(2, 3)
    assert pat.period == 6 and pat.residues == {1, 2}
    pat = sieve_pattern(3, 2)
    assert pat.period == 2 and pat.residues == {1}
    pat = sieve_pattern(2, 5)
    assert pat.period == 20
    assert pat.residues == {n for n in range(pat.period)
                            if (n * pow(2, n, 5) + 1) % 5 == 0}
    with pytest.raises(DomainError):
        sieve_pattern(10, 5)


def test_sieve_pattern_matches_brute_force_three_periods():
    for b in (2, 3, 6, 10, 20):
        for p in sieve_primes(50):
            if b % p == 0:
                continue
            pat = sieve_pattern(b, p)
            assert pat.period == p * multiplicative_order(b, p)
            for n in range(3 * pat.period):
                assert pat.matches(n) == divides_gcn(p, b, n)


def test_sieve_filter_small_range():
    # expected survivors derived by factoring each C_2(n) directly: only the
    # sieved prime 3 can remove an index, and C_2(1) = 3 itself is kept
    expected = [
        n for n in range(1, 11)
        if gcn_value(2, n) % 3 != 0 or gcn_value(2, n) == 3
    ]
    assert sieve_filter(2, range(1, 11), 3) == expected == [1, 3, 4, 5, 6, 9, 10]


def test_sieve_filter_prime_survives():
    assert sieve_filter(2, range(141, 142), 1000) == [141]
    assert sieve_filter(5, range(5, 4), 100) == []


def test_sieve_soundness():
    # every removed candidate really is composite
    for b in (2, 3, 10):
        removed = set(range(1, 60)) - set(sieve_filter(b, range(1, 60), 50))
        for n in removed:
            N = gcn_value(b, n)
            if N < 10 ** 9:
                assert trusted_is_prime(N).is_composite


def test_sieve_filter_exact_survivor_semantics():
    # survivors have no prime factor among the sieved primes
    b, limit = 6, 30
    sieved = [p for p in sieve_primes(limit) if b % p != 0]
    for n in sieve_filter(b, range(1, 40), limit):
        N = gcn_value(b, n)
        assert all(N % p != 0 or N == p for p in sieved)


def test_pattern_export_row():
    assert sieve_pattern(2, 3).export_row() == "3 6 1,2"
    rows = [pat.export_row() for pat in build_patterns(2, 10)]
    assert rows[0].startswith("3 ")
