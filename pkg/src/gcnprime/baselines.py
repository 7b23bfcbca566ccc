"""Reference tests (Fermat, strong probable prime) and a trusted oracle.

The oracle is deterministic below the published 13-base strong-probable-prime
bound (~3.3e24); above it, a trial-division prefilter plus seeded randomized
rounds yield a ProbablePrime verdict rather than a claim of certainty.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from math import gcd

from .bigarith import (
    DETERMINISTIC_MR_BASES,
    DETERMINISTIC_MR_BOUND,
    DomainError,
    modpow,
    sieve_primes,
)

_TRIAL_PRIMES = sieve_primes(10_000)


class OracleKind(str, enum.Enum):
    PRIME = "prime"
    COMPOSITE = "composite"
    PROBABLE_PRIME = "probable-prime"


@dataclass(frozen=True)
class OracleVerdict:
    kind: OracleKind
    rounds: int | None = None  # randomized rounds behind a PROBABLE_PRIME

    @property
    def is_composite(self) -> bool:
        return self.kind is OracleKind.COMPOSITE

    @property
    def is_prime_or_probable(self) -> bool:
        return self.kind in (OracleKind.PRIME, OracleKind.PROBABLE_PRIME)


def _check_base(N: int, a: int) -> int:
    if N < 3 or N % 2 == 0:
        raise DomainError(f"N must be odd and >= 3, got {N}")
    a %= N
    if a == 0 or gcd(a, N) != 1:
        raise DomainError(f"base {a} is not coprime to N")
    return a


def fermat_probable_prime(N: int, a: int) -> bool:
    """a^(N-1) == 1 mod N."""
    a = _check_base(N, a)
    return modpow(a, N - 1, N) == 1


def strong_probable_prime(N: int, a: int) -> bool:
    """Miller-Rabin condition for base a, with N-1 = 2^t * m, m odd."""
    a = _check_base(N, a)
    m = N - 1
    t = 0
    while m % 2 == 0:
        m //= 2
        t += 1
    x = modpow(a, m, N)
    if x == 1 or x == N - 1:
        return True
    for _ in range(t - 1):
        x = x * x % N
        if x == N - 1:
            return True
    return False


def smallest_factor(N: int, limit: int = 10 ** 6) -> int | None:
    """Smallest prime factor <= limit, or None if there is none that small."""
    if N % 2 == 0:
        return 2 if N > 2 else None
    p = 3
    while p <= limit:
        if p * p > N:
            return None
        if N % p == 0:
            return p
        p += 2
    return None


def trusted_is_prime(N: int, rounds: int = 24, seed: int = 0) -> OracleVerdict:
    """Ground-truth labeling: deterministic below DETERMINISTIC_MR_BOUND,
    seeded randomized strong-probable-prime rounds above it."""
    if N < 2:
        return OracleVerdict(OracleKind.COMPOSITE)
    for p in _TRIAL_PRIMES:
        if p * p > N:
            return OracleVerdict(OracleKind.PRIME)
        if N % p == 0:
            return OracleVerdict(OracleKind.COMPOSITE)
    if N < DETERMINISTIC_MR_BOUND:
        for a in DETERMINISTIC_MR_BASES:
            if not strong_probable_prime(N, a):
                return OracleVerdict(OracleKind.COMPOSITE)
        return OracleVerdict(OracleKind.PRIME)
    rng = random.Random(f"{seed}:{N}")
    for _ in range(rounds):
        a = rng.randrange(2, N - 1)
        if gcd(a, N) != 1:
            return OracleVerdict(OracleKind.COMPOSITE)
        if not strong_probable_prime(N, a):
            return OracleVerdict(OracleKind.COMPOSITE)
    return OracleVerdict(OracleKind.PROBABLE_PRIME, rounds=rounds)
