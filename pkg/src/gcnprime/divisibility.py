"""Composite-family constructions and small-prime sieving for C_b(n).

Three exact facts drive this module:

* an explicit index (b^k - k)*(p-1) - k at which p divides C_b(n),
* divisor propagation with period p * ord_p(b),
* a b-independent bound on gcd(C_b(n), C_b(m)).

The sieve enumerates, per prime p, the exact periodic residue set of indices
n with p | C_b(n) and uses it to discard candidates before the expensive
tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .bigarith import DomainError, modpow, multiplicative_order, sieve_primes
from .core import gcn_value


@dataclass(frozen=True)
class SievePattern:
    """Indices n with p | C_b(n) form the union of residues mod p*ord_p(b)."""

    p: int
    period: int
    residues: frozenset[int]

    def matches(self, n: int) -> bool:
        return n % self.period in self.residues

    def export_row(self) -> str:
        return f"{self.p} {self.period} {','.join(map(str, sorted(self.residues)))}"


def prop1_index(b: int, k: int, p: int) -> int:
    """n = (b^k - k)*(p-1) - k, an index with p | C_b(n); p must not divide b."""
    if b % p == 0:
        raise DomainError(f"p = {p} divides b = {b}")
    n = (b ** k - k) * (p - 1) - k
    if n < 1:
        raise DomainError(f"index (b^k - k)(p-1) - k = {n} is below 1")
    return n


def divides_gcn(p: int, b: int, n: int) -> bool:
    """p | C_b(n), computed mod p (n may be huge)."""
    return (n % p * modpow(b, n, p) + 1) % p == 0


def prop2_extend(b: int, n: int, p: int, count: int) -> list[int]:
    """Further indices n + m*p*ord_p(b), m = 1..count, all divisible by p."""
    if b % p == 0:
        raise DomainError(f"p = {p} divides b = {b}")
    if not divides_gcn(p, b, n):
        raise DomainError(f"p = {p} does not divide C_{b}({n})")
    h = multiplicative_order(b, p)
    return [n + m * p * h for m in range(1, count + 1)]


def prop3_bound(n: int, m: int) -> int:
    """b-independent bound: gcd(C_b(n), C_b(m)) divides |n^a + s*m^c| where
    a = m/g, c = n/g (g = gcd) and s = (-1)^(a+c-1)."""
    if n < 1 or m < 1:
        raise DomainError("indices must be >= 1")
    if n == m:
        raise DomainError("indices must differ")
    g = gcd(n, m)
    alpha = m // g
    beta = n // g
    sign = -1 if (alpha + beta - 1) % 2 else 1
    return abs(n ** alpha + sign * m ** beta)


def sieve_pattern(b: int, p: int) -> SievePattern:
    """Exact residue pattern of p, one residue per power class of b mod p.

    With h = ord_p(b) and n = j mod h, p | C_b(n) pins n = -b^(-j) mod p;
    gcd(h, p) = 1 makes each pair a single CRT residue mod p*h, so the set
    has exactly h members.  Matches the brute-force enumeration of
    C_b(n) mod p over a full period (checked in the test suite).
    """
    if b % p == 0:
        raise DomainError(f"p = {p} divides b = {b}")
    h = multiplicative_order(b, p)
    period = p * h
    if p == 2:
        # b odd: C_b(n) = n*b^n + 1 is even exactly when n is odd.
        return SievePattern(p=2, period=2, residues=frozenset({1}))
    b_inv = pow(b % p, p - 2, p)
    h_inv = pow(h % p, p - 2, p)
    residues = set()
    inv_pow = 1  # b^(-j) mod p
    for j in range(h):
        a = (-inv_pow) % p
        residues.add((j + h * ((a - j) * h_inv % p)) % period)
        inv_pow = inv_pow * b_inv % p
    return SievePattern(p=p, period=period, residues=frozenset(residues))


def build_patterns(b: int, prime_limit: int) -> list[SievePattern]:
    return [sieve_pattern(b, p) for p in sieve_primes(prime_limit) if b % p != 0]


def sieve_hit(
    b: int, n: int, patterns: Sequence[SievePattern]
) -> int | None:
    """Smallest pattern prime dividing C_b(n) with C_b(n) > p, else None."""
    for pat in patterns:
        if pat.matches(n):
            # Keep n when C_b(n) is the sieving prime itself (tiny cases only).
            if n <= 64 and gcn_value(b, n) == pat.p:
                continue
            return pat.p
    return None


def sieve_filter(
    b: int, n_range: Iterable[int], prime_limit: int
) -> list[int]:
    """Candidates from n_range with no prime factor among the sieved primes
    (p <= prime_limit, p not dividing b)."""
    if prime_limit < 2:
        raise DomainError(f"prime_limit must be >= 2, got {prime_limit}")
    patterns = build_patterns(b, prime_limit)
    return [n for n in n_range if sieve_hit(b, n, patterns) is None]
