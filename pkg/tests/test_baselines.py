import random

import pytest

from gcnprime.baselines import (
    OracleKind,
    fermat_probable_prime,
    smallest_factor,
    strong_probable_prime,
    trusted_is_prime,
)
from gcnprime.bigarith import DomainError
from gcnprime.core import GcnCandidate, VerdictKind, parity_prefilter
from gcnprime.core import test1 as gcn_test1


def test_fermat_examples():
    assert fermat_probable_prime(9605, 4) is True  # C_7(4), Fermat pseudoprime
    assert fermat_probable_prime(9605, 2) is False
    assert fermat_probable_prime(7, 3) is True


def test_fermat_domain():
    with pytest.raises(DomainError):
        fermat_probable_prime(9, 3)  # gcd != 1
    with pytest.raises(DomainError):
        fermat_probable_prime(15, 30)  # base reduces to 0


def test_strong_probable_prime_examples():
    assert strong_probable_prime(2047, 2) is True  # classic strong pseudoprime
    assert strong_probable_prime(9, 2) is False
    assert strong_probable_prime(13, 2) is True


def test_oracle_examples():
    assert trusted_is_prime(12801).kind is OracleKind.COMPOSITE
    assert trusted_is_prime(18677955240001).kind is OracleKind.COMPOSITE
    assert trusted_is_prime(163841).kind is OracleKind.PRIME


def test_oracle_agrees_with_trial_division():
    def brute(n):
        if n < 2:
            return False
        d = 2
        while d * d <= n:
            if n % d == 0:
                return False
            d += 1
        return True

    for n in range(200_000):
        assert (trusted_is_prime(n).kind is OracleKind.PRIME) == brute(n)


def test_oracle_large_is_probable_and_seeded():
    N = GcnCandidate(3, 200).value  # ~98 digits, beyond the deterministic bound
    v1 = trusted_is_prime(N, rounds=8, seed=7)
    v2 = trusted_is_prime(N, rounds=8, seed=7)
    assert v1 == v2
    assert v1.kind in (OracleKind.PROBABLE_PRIME, OracleKind.COMPOSITE)


def test_smallest_factor():
    assert smallest_factor(12801) == 3
    assert smallest_factor(9605) == 5
    assert smallest_factor(163841) is None


def test_test1_implies_baselines():
    # whenever test1 passes for odd N: Fermat base n, Fermat base b and the
    # strong test base n all pass too
    rng = random.Random(11)
    checked = 0
    while checked < 500:
        b = rng.randrange(2, 200)
        n = rng.randrange(1, 40)
        c = GcnCandidate(b, n)
        if parity_prefilter(c) is not None:
            continue
        checked += 1
        if gcn_test1(c).kind is VerdictKind.COMPOSITE:
            continue
        N = c.value
        assert fermat_probable_prime(N, n)
        assert fermat_probable_prime(N, b)
        assert strong_probable_prime(N, n)
