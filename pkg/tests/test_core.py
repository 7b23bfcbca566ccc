import pytest

from gcnprime.baselines import trusted_is_prime
from gcnprime.bigarith import DomainError
from gcnprime.core import (
    CertificateError,
    CompositeReason,
    GcnCandidate,
    InconsistencyError,
    PrimalityCertificate,
    VerdictKind,
    _level_residue,
    certify_base,
    compute_K,
    gcn_value,
    parity_prefilter,
    run_full_test,
    test1 as gcn_test1,
    test2_base as gcn_test2_base,
    verify_certificate,
)


def test_gcn_value_examples():
    assert gcn_value(2, 1) == 3
    assert gcn_value(80, 2) == 12801
    assert gcn_value(3570, 3) == 136497879001


def test_gcn_value_domain():
    with pytest.raises(DomainError):
        gcn_value(1, 5)
    with pytest.raises(DomainError):
        gcn_value(3, 0)


def test_candidate_invariants():
    c = GcnCandidate(6, 4)
    N = c.value
    assert N % c.n == 1
    assert N % c.b ** c.n == 1
    assert c.exponent == c.b ** c.n
    with pytest.raises(DomainError):
        GcnCandidate(1, 1)
    with pytest.raises(DomainError):
        GcnCandidate(2, 0)


def test_parity_prefilter():
    v = parity_prefilter(GcnCandidate(3, 5))
    assert v is not None and v.reason is CompositeReason.PARITY_PREFILTER
    assert parity_prefilter(GcnCandidate(2, 141)) is None
    assert parity_prefilter(GcnCandidate(3, 1400)) is None


def test_test1_examples():
    assert gcn_test1(GcnCandidate(2, 141)).kind is VerdictKind.PROBABLE_PRIME_TEST1
    # C_80(2) = 12801 is composite yet passes: a test1 pseudoprime
    assert gcn_test1(GcnCandidate(80, 2)).kind is VerdictKind.PROBABLE_PRIME_TEST1
    assert gcn_test1(GcnCandidate(2, 2)).kind is VerdictKind.COMPOSITE
    # C_7(4) fools Fermat base n but not test1
    assert gcn_test1(GcnCandidate(7, 4)).kind is VerdictKind.COMPOSITE


def test_compute_K_published_table_small():
    assert compute_K(GcnCandidate(8, 5), 2) == 1
    assert compute_K(GcnCandidate(20, 3), 5) == 0
    assert compute_K(GcnCandidate(3, 1850), 3) == 1


def test_compute_K_domain_and_inconsistency():
    with pytest.raises(DomainError):
        compute_K(GcnCandidate(8, 5), 3)  # 3 does not divide 8
    with pytest.raises(InconsistencyError):
        compute_K(GcnCandidate(2, 2), 2)  # test1 fails, level 0 residue != 1


def test_compute_K_prefix_property():
    # for the returned K: level K holds and level K+1 fails (when it exists)
    for b in range(2, 31):
        for n in range(1, 13):
            c = GcnCandidate(b, n)
            if parity_prefilter(c) is not None:
                continue
            if gcn_test1(c).kind is VerdictKind.COMPOSITE:
                continue
            for p, r_p in c.base_factors:
                K = compute_K(c, p)
                assert _level_residue(c, p, K) == 1
                if K < n * r_p:
                    assert _level_residue(c, p, K + 1) != 1


def test_test2_base_examples():
    # the Carmichael number C_1470(4) fools test2 at base 2 only
    c = GcnCandidate(1470, 4)
    assert gcn_test2_base(c, 2).passed
    assert not gcn_test2_base(c, 3).passed
    res = gcn_test2_base(GcnCandidate(8, 5), 2)
    assert res.passed and res.K == 1 and res.cyclotomic_witness


def test_certify_base_examples():
    cert = certify_base(GcnCandidate(8, 5), 2, 1)
    assert cert == PrimalityCertificate(b=8, n=5, p=2, K=1)
    assert certify_base(GcnCandidate(20, 3), 5, 0) is None  # 5^6 < 24000
    assert certify_base(GcnCandidate(20, 6207), 5, 0) is not None
    with pytest.raises(DomainError):
        certify_base(GcnCandidate(8, 5), 2, 15)  # K = n*r_p has no witness


def test_run_full_test_examples():
    v = run_full_test(GcnCandidate(1470, 4))
    assert v.kind is VerdictKind.COMPOSITE
    assert v.reason is CompositeReason.TEST2_FAILURE and v.failing_base == 3

    v = run_full_test(GcnCandidate(3, 1400))
    assert v.kind is VerdictKind.PROVEN_PRIME
    assert verify_certificate(v.certificate)

    v = run_full_test(GcnCandidate(20, 3))
    assert v.kind is VerdictKind.PROBABLE_PRIME_TEST2
    assert v.passing_bases == (2, 5)
    assert trusted_is_prime(gcn_value(20, 3)).kind.value == "prime"  # 24001


def test_run_full_test_parity():
    v = run_full_test(GcnCandidate(3, 5))
    assert v.kind is VerdictKind.COMPOSITE
    assert v.reason is CompositeReason.PARITY_PREFILTER


def test_verify_certificate_examples():
    assert verify_certificate(PrimalityCertificate(b=8, n=5, p=2, K=1)) is True
    assert verify_certificate(PrimalityCertificate(b=8, n=5, p=2, K=0)) is False
    with pytest.raises(CertificateError):
        verify_certificate(PrimalityCertificate(b=8, n=5, p=3, K=1))
    with pytest.raises(CertificateError):
        verify_certificate(PrimalityCertificate(b=8, n=5, p=2, K=15))
    with pytest.raises(CertificateError):
        verify_certificate(PrimalityCertificate(b=8, n=5, p=2, K=1, schema_version=2))


def test_certificate_json_roundtrip():
    cert = PrimalityCertificate(b=20, n=6207, p=5, K=0)
    again = PrimalityCertificate.from_json(cert.to_json())
    assert again == cert
    assert verify_certificate(again)


def test_certificate_json_malformed():
    with pytest.raises(CertificateError):
        PrimalityCertificate.from_json("not json")
    with pytest.raises(CertificateError):
        PrimalityCertificate.from_json('{"schema_version": 1, "b": "8"}')
    with pytest.raises(CertificateError):
        PrimalityCertificate.from_json(
            '{"schema_version": 1, "b": "8", "n": "5", "p": "2", "K": "0x1"}'
        )
    with pytest.raises(CertificateError):
        PrimalityCertificate.from_json(
            '{"schema_version": 9, "b": "8", "n": "5", "p": "2", "K": "1"}'
        )


def test_emitted_certificates_verify_in_small_range():
    for b in range(2, 21):
        for n in range(1, 11):
            v = run_full_test(GcnCandidate(b, n))
            if v.kind is VerdictKind.PROVEN_PRIME:
                assert verify_certificate(
                    PrimalityCertificate.from_json(v.certificate.to_json())
                )
            else:
                assert v.certificate is None
