"""Primality tests and certification for Generalized Cullen Numbers.

A candidate is N = C_b(n) = n*b^n + 1.  The pipeline is:

* a parity prefilter (b and n both odd makes N even),
* a congruence test on n^(b^n) mod N ("test1"),
* a refinement per prime divisor p of b using the level search for K and a
  p-th cyclotomic evaluation ("test2"),
* a sufficient primality condition: a cyclotomic witness at level K+1 plus
  the exact inequality p^(2*(n*r_p - K)) > N - 1 yields a short certificate
  (b, n, p, K) that anyone can recheck independently.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property

from .bigarith import (
    DomainError,
    FactoredBase,
    cyclotomic_eval,
    decimal_str,
    digit_count,
    factorize,
    is_prime,
    modpow,
    power_exceeds,
)

CERTIFICATE_SCHEMA_VERSION = 1


class InconsistencyError(RuntimeError):
    """A caller violated an internal precondition (e.g. level-0 residue != 1)."""


class CertificateError(ValueError):
    """A certificate is structurally malformed (distinct from being invalid)."""


class VerdictKind(str, enum.Enum):
    COMPOSITE = "composite"
    PROBABLE_PRIME_TEST1 = "probable-prime-test1"
    PROBABLE_PRIME_TEST2 = "probable-prime-test2"
    PROVEN_PRIME = "proven-prime"


class CompositeReason(str, enum.Enum):
    PARITY_PREFILTER = "parity-prefilter"
    TEST1_FAILURE = "test1-failure"
    TEST2_FAILURE = "test2-failure"
    SIEVE_DIVISOR = "sieve-divisor"


@dataclass(frozen=True)
class PrimalityCertificate:
    """Witness (b, n, p, K): a cyclotomic root at level K+1 plus the power
    inequality force every prime divisor of N past sqrt(N)."""

    b: int
    n: int
    p: int
    K: int
    schema_version: int = CERTIFICATE_SCHEMA_VERSION

    def to_json(self) -> str:
        obj = {
            "schema_version": self.schema_version,
            "b": decimal_str(self.b),
            "n": decimal_str(self.n),
            "p": decimal_str(self.p),
            "K": decimal_str(self.K),
        }
        return json.dumps(obj, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "PrimalityCertificate":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateError(f"certificate is not valid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise CertificateError("certificate must be a JSON object")
        if obj.get("schema_version") != CERTIFICATE_SCHEMA_VERSION:
            raise CertificateError(
                f"unsupported schema_version: {obj.get('schema_version')!r}"
            )
        fields = {}
        for name in ("b", "n", "p", "K"):
            raw = obj.get(name)
            if not isinstance(raw, str) or not raw.isdigit():
                raise CertificateError(f"field {name!r} must be a decimal string")
            fields[name] = int(raw)
        return cls(schema_version=CERTIFICATE_SCHEMA_VERSION, **fields)


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    reason: CompositeReason | None = None
    failing_base: int | None = None  # p for test2 failures / sieve divisors
    passing_bases: tuple[int, ...] = ()
    k_by_base: dict[int, int] = field(default_factory=dict)
    certificate: PrimalityCertificate | None = None

    def human(self) -> str:
        if self.kind is VerdictKind.COMPOSITE:
            detail = self.reason.value if self.reason else "composite"
            if self.failing_base is not None:
                detail += f" at base {self.failing_base}"
            return f"COMPOSITE NUMBER ({detail})"
        if self.kind is VerdictKind.PROVEN_PRIME:
            return "PRIME NUMBER"
        tag = "TEST1" if self.kind is VerdictKind.PROBABLE_PRIME_TEST1 else "TEST2"
        return f"PROBABLE PRIME ({tag})"


class GcnCandidate:
    """The pair (b, n) identifying N = n*b^n + 1, with cached derived data."""

    def __init__(self, b: int, n: int):
        if b < 2:
            raise DomainError(f"b must be >= 2, got {b}")
        if n < 1:
            raise DomainError(f"n must be >= 1, got {n}")
        self.b = b
        self.n = n

    @cached_property
    def base_factors(self) -> FactoredBase:
        return factorize(self.b)

    @cached_property
    def value(self) -> int:
        return self.n * self.b ** self.n + 1

    @cached_property
    def exponent(self) -> int:
        # b^n recovered as (N-1)/n so the cached N is the single source.
        e, rem = divmod(self.value - 1, self.n)
        assert rem == 0
        return e

    def base_exponent_of(self, p: int) -> int:
        """The exponent r_p of the prime p in b; DomainError when p does not divide b."""
        for q, r in self.base_factors:
            if q == p:
                return r
        raise DomainError(f"{p} does not divide b = {self.b}")

    def digits(self) -> int:
        return digit_count(self.value)

    def __repr__(self) -> str:
        return f"GcnCandidate(b={self.b}, n={self.n})"


def gcn_value(b: int, n: int) -> int:
    """C_b(n) = n*b^n + 1."""
    if b < 2:
        raise DomainError(f"b must be >= 2, got {b}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return n * b ** n + 1


def parity_prefilter(c: GcnCandidate) -> Verdict | None:
    """Composite verdict when b and n are both odd (then N is even and > 2)."""
    if c.b % 2 == 1 and c.n % 2 == 1:
        return Verdict(VerdictKind.COMPOSITE, reason=CompositeReason.PARITY_PREFILTER)
    return None


def test1(c: GcnCandidate) -> Verdict:
    """Necessary condition for primality: n^(b^n) == (-1)^b mod N."""
    N = c.value
    r = modpow(c.n, c.exponent, N)
    want = 1 if c.b % 2 == 0 else N - 1
    if r == want:
        return Verdict(VerdictKind.PROBABLE_PRIME_TEST1)
    return Verdict(VerdictKind.COMPOSITE, reason=CompositeReason.TEST1_FAILURE)


def _level_residue(c: GcnCandidate, p: int, i: int) -> int:
    """(-n)^(b^n / p^i) mod N, with -n represented as N - n."""
    N = c.value
    return modpow(N - c.n, c.exponent // p ** i, N)


def compute_K(c: GcnCandidate, p: int) -> int:
    """Largest i in [0, n*r_p] with (-n)^(b^n / p^i) == 1 mod N.

    Requires test1 to have passed (level 0 is then 1).  Uses the downward
    closure "level i holds => level i-1 holds" to binary-search with
    O(log(n*r_p)) modular exponentiations.
    """
    r_p = c.base_exponent_of(p)
    hi = c.n * r_p
    if _level_residue(c, p, 0) != 1:
        raise InconsistencyError(
            "level-0 residue != 1; compute_K requires a candidate that passed test1"
        )
    if _level_residue(c, p, hi) == 1:
        return hi
    lo = 0  # invariant: level lo holds, level hi fails
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _level_residue(c, p, mid) == 1:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class Test2Result:
    p: int
    passed: bool
    K: int
    cyclotomic_witness: bool  # True when the pass came from the Phi_p root


def test2_base(c: GcnCandidate, p: int) -> Test2Result:
    """Refined test at prime base p | b: either all levels hold, or the first
    failing level is a root of the p-th cyclotomic polynomial mod N."""
    r_p = c.base_exponent_of(p)
    K = compute_K(c, p)
    if K == c.n * r_p:
        return Test2Result(p=p, passed=True, K=K, cyclotomic_witness=False)
    x = _level_residue(c, p, K + 1)
    if cyclotomic_eval(p, x, c.value) == 0:
        return Test2Result(p=p, passed=True, K=K, cyclotomic_witness=True)
    return Test2Result(p=p, passed=False, K=K, cyclotomic_witness=False)


def certify_base(c: GcnCandidate, p: int, K: int) -> PrimalityCertificate | None:
    """Certificate when p^(2*(n*r_p - K)) > N - 1; caller guarantees the
    cyclotomic witness at level K+1 exists (test2 passed via that branch)."""
    r_p = c.base_exponent_of(p)
    if K >= c.n * r_p:
        raise DomainError(
            f"K = {K} leaves no cyclotomic witness (n*r_p = {c.n * r_p})"
        )
    if power_exceeds(p, c.n * r_p - K, c.value - 1):
        return PrimalityCertificate(b=c.b, n=c.n, p=p, K=K)
    return None


def run_full_test(c: GcnCandidate) -> Verdict:
    """Full pipeline: prefilter, test1, test2 at every prime divisor of b,
    then certification attempts in increasing base order."""
    v = parity_prefilter(c)
    if v is not None:
        return v
    v = test1(c)
    if v.kind is VerdictKind.COMPOSITE:
        return v
    k_by_base: dict[int, int] = {}
    results: list[Test2Result] = []
    for p, _ in c.base_factors:
        res = test2_base(c, p)
        k_by_base[p] = res.K
        if not res.passed:
            return Verdict(
                VerdictKind.COMPOSITE,
                reason=CompositeReason.TEST2_FAILURE,
                failing_base=p,
                k_by_base=k_by_base,
            )
        results.append(res)
    for res in results:  # ascending p: smallest certifiable base wins
        if res.cyclotomic_witness:
            cert = certify_base(c, res.p, res.K)
            if cert is not None:
                return Verdict(
                    VerdictKind.PROVEN_PRIME,
                    passing_bases=tuple(r.p for r in results),
                    k_by_base=k_by_base,
                    certificate=cert,
                )
    return Verdict(
        VerdictKind.PROBABLE_PRIME_TEST2,
        passing_bases=tuple(r.p for r in results),
        k_by_base=k_by_base,
    )


def verify_certificate(cert: PrimalityCertificate) -> bool:
    """Recheck a certificate from scratch; True is a proof that C_b(n) is prime.

    Structural problems (wrong schema, p not a prime divisor of b, K out of
    range) raise CertificateError; a well-formed certificate whose hypotheses
    fail returns False.
    """
    if cert.schema_version != CERTIFICATE_SCHEMA_VERSION:
        raise CertificateError(f"unsupported schema_version {cert.schema_version}")
    if cert.b < 2 or cert.n < 1 or cert.K < 0:
        raise CertificateError("fields out of range")
    if not is_prime(cert.p):
        raise CertificateError(f"p = {cert.p} is not prime")
    if cert.b % cert.p != 0:
        raise CertificateError(f"p = {cert.p} does not divide b = {cert.b}")
    c = GcnCandidate(cert.b, cert.n)
    r_p = c.base_exponent_of(cert.p)
    if cert.K >= c.n * r_p:
        raise CertificateError(f"K = {cert.K} must be < n*r_p = {c.n * r_p}")
    x = _level_residue(c, cert.p, cert.K + 1)
    if cyclotomic_eval(cert.p, x, c.value) != 0:
        return False
    return power_exceeds(cert.p, c.n * r_p - cert.K, c.value - 1)
