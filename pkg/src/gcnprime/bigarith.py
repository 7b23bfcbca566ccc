"""Arbitrary-precision integer kernels shared by the rest of the package.

Python integers are already unbounded; when gmpy2 (GMP) is importable it is
used to speed up the multi-thousand-bit modular exponentiations and the
decimal conversions of very large values.  All functions are pure and keep
results as plain ``int``.
"""

from __future__ import annotations

import itertools
from math import gcd, isqrt

try:
    import gmpy2
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    gmpy2 = None

# Ordered (prime, exponent) pairs whose product is the factored value.
FactoredBase = tuple[tuple[int, int], ...]

_TRIAL_DIVISION_LIMIT = 10 ** 6

# Strong-probable-prime bases that are deterministic for n < 3.317e24
# (Sorenson & Webster, "Strong pseudoprimes to twelve prime bases").
DETERMINISTIC_MR_BOUND = 3_317_044_064_679_887_385_961_981
DETERMINISTIC_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class DomainError(ValueError):
    """An argument lies outside an operation's domain."""


def modpow(base: int, exponent: int, modulus: int) -> int:
    """base**exponent mod modulus, in [0, modulus)."""
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    if gmpy2 is not None:
        return int(gmpy2.powmod(base, exponent, modulus))
    return pow(base, exponent, modulus)


def decimal_str(x: int) -> str:
    """Exact decimal representation, safe for values of millions of digits."""
    if gmpy2 is not None:
        return gmpy2.mpz(x).digits(10)
    return str(x)


def digit_count(x: int) -> int:
    """Number of decimal digits of x >= 1."""
    if x < 1:
        raise DomainError(f"digit_count requires x >= 1, got {x}")
    return len(decimal_str(x))


def _mr_round(n: int, a: int) -> bool:
    """One strong-probable-prime round for odd n >= 3; True = possibly prime."""
    a %= n
    if a == 0:
        return True
    d = n - 1
    t = 0
    while d % 2 == 0:
        d //= 2
        t += 1
    x = modpow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(t - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Internal primality utility; deterministic below DETERMINISTIC_MR_BOUND.

    Above the bound this is a fixed-base strong probable-prime check, which is
    ample for the small factorization inputs this module handles.  The public
    oracle with explicit verdicts lives in :mod:`gcnprime.baselines`.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n == p:
            return True
        if n % p == 0:
            return False
    return all(_mr_round(n, a) for a in DETERMINISTIC_MR_BASES)


def _pollard_brent(n: int) -> int:
    """Brent's cycle variant of Pollard rho; n odd composite, no tiny factor.

    Parameters are swept deterministically so repeated runs factor
    identically.
    """
    for c in itertools.count(1):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise AssertionError("unreachable")


def factorize(x: int) -> FactoredBase:
    """Complete prime factorization as ordered (prime, exponent) pairs."""
    if x < 2:
        raise DomainError(f"factorize requires x >= 2, got {x}")
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while x % p == 0:
            factors[p] = factors.get(p, 0) + 1
            x //= p
    # 2,3,5-wheel trial division up to min(sqrt(x), 10^6).
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    p, i = 7, 0
    while p * p <= x and p <= _TRIAL_DIVISION_LIMIT:
        while x % p == 0:
            factors[p] = factors.get(p, 0) + 1
            x //= p
        p += increments[i]
        i = (i + 1) % 8
    stack = [x] if x > 1 else []
    while stack:
        y = stack.pop()
        if y == 1:
            continue
        if is_prime(y):
            factors[y] = factors.get(y, 0) + 1
            continue
        d = _pollard_brent(y)
        stack.append(d)
        stack.append(y // d)
    return tuple(sorted(factors.items()))


def factored_value(fb: FactoredBase) -> int:
    v = 1
    for p, r in fb:
        v *= p ** r
    return v


def multiplicative_order(a: int, p: int) -> int:
    """Smallest h >= 1 with a**h == 1 mod p, for prime p not dividing a."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    a %= p
    if a == 0:
        raise DomainError("a is divisible by p")
    h = p - 1
    for q, _ in factorize(p - 1) if p > 2 else ():
        while h % q == 0 and modpow(a, h // q, p) == 1:
            h //= q
    return h


def cyclotomic_eval(p: int, x: int, modulus: int) -> int:
    """Phi_p(x) mod modulus for prime p, via Horner on 1 + x + ... + x^(p-1)."""
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    if not is_prime(p):
        raise DomainError(f"cyclotomic index {p} is not prime")
    if gmpy2 is not None:
        xm = gmpy2.mpz(x % modulus)
        acc = gmpy2.mpz(1)
        for _ in range(p - 1):
            acc = (acc * xm + 1) % modulus
        return int(acc)
    xm = x % modulus
    acc = 1
    for _ in range(p - 1):
        acc = (acc * xm + 1) % modulus
    return acc


def power_exceeds(p: int, e: int, bound: int) -> bool:
    """Exact test of p**(2e) > bound; never touches floating point."""
    if p < 2:
        raise DomainError(f"p must be >= 2, got {p}")
    if 2 * e >= bound.bit_length():
        return True  # p**(2e) >= 2**(2e) >= 2**bitlen > bound
    return p ** (2 * e) > bound


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit by Eratosthenes."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [i for i, f in enumerate(flags) if f]
