"""Batch harnesses: range scans, pseudoprime hunting, conjecture monitoring
and timing capture.

Scan output is line-delimited JSON: a header line carrying the run
parameters and tool version, then one record per examined index in ascending
order.  The output file doubles as the checkpoint; resuming keeps every
complete record and continues after the last one.  All naturals are decimal
strings.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

from . import __version__
from .baselines import OracleVerdict, fermat_probable_prime, smallest_factor, \
    strong_probable_prime, trusted_is_prime
from .bigarith import decimal_str, digit_count
from .core import (
    CompositeReason,
    GcnCandidate,
    PrimalityCertificate,
    Verdict,
    VerdictKind,
    gcn_value,
    run_full_test,
    test1,
    test2_base,
)
from .divisibility import build_patterns, sieve_hit

SCAN_FORMAT = "gcnprime-scan"
SCAN_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ScanRecord:
    b: int
    n: int
    digits: int
    verdict: VerdictKind
    reason: CompositeReason | None = None
    sieve_hit: int | None = None
    k_by_base: dict[int, int] = field(default_factory=dict)
    elapsed_ms: int = 0
    certificate: PrimalityCertificate | None = None

    def to_json_line(self) -> str:
        obj = {
            "b": decimal_str(self.b),
            "n": decimal_str(self.n),
            "digits": decimal_str(self.digits),
            "verdict": self.verdict.value,
            "reason": self.reason.value if self.reason else None,
            "sieve_hit": decimal_str(self.sieve_hit) if self.sieve_hit else None,
            "K_by_base": {
                decimal_str(p): decimal_str(k)
                for p, k in sorted(self.k_by_base.items())
            },
            "elapsed_ms": self.elapsed_ms,
            "certificate": json.loads(self.certificate.to_json())
            if self.certificate
            else None,
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_line(cls, line: str) -> "ScanRecord":
        obj = json.loads(line)
        cert = obj.get("certificate")
        return cls(
            b=int(obj["b"]),
            n=int(obj["n"]),
            digits=int(obj["digits"]),
            verdict=VerdictKind(obj["verdict"]),
            reason=CompositeReason(obj["reason"]) if obj.get("reason") else None,
            sieve_hit=int(obj["sieve_hit"]) if obj.get("sieve_hit") else None,
            k_by_base={int(p): int(k) for p, k in obj.get("K_by_base", {}).items()},
            elapsed_ms=int(obj.get("elapsed_ms", 0)),
            certificate=PrimalityCertificate.from_json(json.dumps(cert))
            if cert
            else None,
        )


def _verdict_record(
    b: int, n: int, v: Verdict, elapsed_ms: int, digits: int
) -> ScanRecord:
    return ScanRecord(
        b=b,
        n=n,
        digits=digits,
        verdict=v.kind,
        reason=v.reason,
        sieve_hit=v.failing_base if v.reason is CompositeReason.SIEVE_DIVISOR else None,
        k_by_base=dict(v.k_by_base),
        elapsed_ms=elapsed_ms,
        certificate=v.certificate,
    )


def _scan_worker(task: tuple[int, int, bool]) -> ScanRecord:
    b, n, record_timings = task
    c = GcnCandidate(b, n)
    t0 = time.perf_counter()
    v = run_full_test(c)
    elapsed_ms = int((time.perf_counter() - t0) * 1000) if record_timings else 0
    return _verdict_record(b, n, v, elapsed_ms, c.digits())


def scan_gcp(
    b: int,
    n_from: int,
    n_to: int,
    sieve_limit: int,
    workers: int = 1,
    record_timings: bool = True,
    start_at: int | None = None,
) -> Iterator[ScanRecord]:
    """One record per n in [n_from, n_to], ascending, sieved-out candidates
    included.  Worker count never changes the records."""
    first = start_at if start_at is not None else n_from
    if first > n_to:
        return
    patterns = build_patterns(b, sieve_limit)
    plan: list[tuple[int, int | None]] = [
        (n, sieve_hit(b, n, patterns)) for n in range(first, n_to + 1)
    ]
    survivors = [(b, n, record_timings) for n, hit in plan if hit is None]

    if workers > 1 and len(survivors) > 1:
        import multiprocessing

        with multiprocessing.Pool(workers) as pool:
            results = iter(pool.imap(_scan_worker, survivors, chunksize=8))
            for n, hit in plan:
                yield _sieved_record(b, n, hit) if hit else next(results)
    else:
        for n, hit in plan:
            yield _sieved_record(b, n, hit) if hit else _scan_worker((b, n, record_timings))


def _sieved_record(b: int, n: int, p: int) -> ScanRecord:
    return ScanRecord(
        b=b,
        n=n,
        digits=digit_count(gcn_value(b, n)),
        verdict=VerdictKind.COMPOSITE,
        reason=CompositeReason.SIEVE_DIVISOR,
        sieve_hit=p,
    )


def scan_header(b: int, n_from: int, n_to: int, sieve_limit: int,
                record_timings: bool) -> str:
    obj = {
        "format": SCAN_FORMAT,
        "schema_version": SCAN_SCHEMA_VERSION,
        "tool_version": __version__,
        "b": decimal_str(b),
        "n_from": decimal_str(n_from),
        "n_to": decimal_str(n_to),
        "sieve_limit": decimal_str(sieve_limit),
        "timings": record_timings,
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class CheckpointError(RuntimeError):
    """A checkpoint file is unusable for the requested run."""


def load_checkpoint(path: str, expected_header: str) -> tuple[list[str], int | None]:
    """Complete lines salvageable from an interrupted scan.

    Returns (lines to keep, last completed n).  Partial trailing lines are
    dropped; a header mismatch means the checkpoint belongs to a different
    run and is refused rather than overwritten.
    """
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    lines = raw.split("\n")
    if not lines or lines[0] != expected_header:
        raise CheckpointError(
            f"checkpoint {path} does not match this run's parameters"
        )
    kept = [lines[0]]
    last_n = None
    for line in lines[1:]:
        if not line:
            continue
        try:
            rec = ScanRecord.from_json_line(line)
        except (ValueError, KeyError):
            break  # truncated trailing write; resume from before it
        kept.append(line)
        last_n = rec.n
    return kept, last_n


def run_scan(
    b: int,
    n_from: int,
    n_to: int,
    sieve_limit: int,
    out_path: str | None = None,
    stream: IO[str] | None = None,
    workers: int = 1,
    record_timings: bool = True,
    resume: bool = False,
) -> int:
    """Drive a scan, persisting records as they complete; returns the number
    of records written in this invocation."""
    header = scan_header(b, n_from, n_to, sieve_limit, record_timings)
    start_at = n_from
    if out_path is not None:
        if resume and os.path.exists(out_path):
            kept, last_n = load_checkpoint(out_path, header)
            if last_n is not None:
                start_at = last_n + 1
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write("\n".join(kept) + "\n")
            out = open(out_path, "a", encoding="utf-8")
        else:
            out = open(out_path, "w", encoding="utf-8")
            out.write(header + "\n")
            out.flush()
    else:
        out = stream
        if out is None:
            raise ValueError("run_scan needs out_path or stream")
        out.write(header + "\n")
    written = 0
    try:
        for rec in scan_gcp(
            b, n_from, n_to, sieve_limit,
            workers=workers, record_timings=record_timings, start_at=start_at,
        ):
            out.write(rec.to_json_line() + "\n")
            out.flush()
            written += 1
    finally:
        if out_path is not None:
            out.close()
    return written


# --- pseudoprime hunting ---------------------------------------------------

TEST1_TAG = "TEST1"
FERMAT_BASE_N_TAG = "FermatBaseN"
FERMAT_BASE_B_TAG = "FermatBaseB"
MILLER_RABIN_BASE_N_TAG = "MillerRabinBaseN"


def format_test2_tag(p: int) -> str:
    return f"TEST2({p})"


@dataclass(frozen=True)
class PseudoprimeRecord:
    b: int
    n: int
    passed: tuple[str, ...]
    oracle: OracleVerdict
    factor: int | None  # smallest prime factor when <= 10^6

    def to_json_line(self) -> str:
        obj = {
            "b": decimal_str(self.b),
            "n": decimal_str(self.n),
            "N": decimal_str(gcn_value(self.b, self.n)),
            "passed": list(self.passed),
            "oracle": self.oracle.kind.value,
            "smallest_factor": decimal_str(self.factor) if self.factor else None,
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def hunt_pseudoprimes(
    b_from: int, b_to: int, n_from: int, n_to: int
) -> Iterator[PseudoprimeRecord]:
    """Composites (odd N only) that fool at least one of the tests."""
    for b in range(b_from, b_to + 1):
        for n in range(n_from, n_to + 1):
            if b % 2 == 1 and n % 2 == 1:
                continue  # N even
            c = GcnCandidate(b, n)
            N = c.value
            passed = []
            t1_ok = test1(c).kind is not VerdictKind.COMPOSITE
            if t1_ok:
                passed.append(TEST1_TAG)
            if fermat_probable_prime(N, n):
                passed.append(FERMAT_BASE_N_TAG)
            if fermat_probable_prime(N, b):
                passed.append(FERMAT_BASE_B_TAG)
            if strong_probable_prime(N, n):
                passed.append(MILLER_RABIN_BASE_N_TAG)
            if t1_ok:
                # test2 needs the level-0 residue to be 1, i.e. a test1 pass.
                for p, _ in c.base_factors:
                    if test2_base(c, p).passed:
                        passed.append(format_test2_tag(p))
            if not passed:
                continue
            oracle = trusted_is_prime(N)
            if oracle.is_composite:
                yield PseudoprimeRecord(
                    b=b, n=n, passed=tuple(passed), oracle=oracle,
                    factor=smallest_factor(N),
                )


# --- conjecture monitor ----------------------------------------------------

@dataclass(frozen=True)
class ConjectureViolation:
    b: int
    n: int
    verdict: VerdictKind
    oracle: OracleVerdict

    def to_json_line(self) -> str:
        obj = {
            "b": decimal_str(self.b),
            "n": decimal_str(self.n),
            "verdict": self.verdict.value,
            "oracle": self.oracle.kind.value,
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def conjecture_monitor(
    b_from: int, b_to: int, n_from: int, n_to: int,
    rounds: int = 24, seed: int = 0,
) -> list[ConjectureViolation]:
    """Candidates with n > b that the oracle calls (probably) prime but the
    pipeline leaves uncertified.  Any entry refutes the n > b determinism
    conjecture and deserves a report, not a crash."""
    violations = []
    for b in range(b_from, b_to + 1):
        for n in range(max(n_from, b + 1), n_to + 1):
            if b % 2 == 1 and n % 2 == 1:
                continue
            N = gcn_value(b, n)
            oracle = trusted_is_prime(N, rounds=rounds, seed=seed)
            if not oracle.is_prime_or_probable:
                continue
            v = run_full_test(GcnCandidate(b, n))
            if v.kind is not VerdictKind.PROVEN_PRIME:
                violations.append(
                    ConjectureViolation(b=b, n=n, verdict=v.kind, oracle=oracle)
                )
    return violations


# --- timing capture --------------------------------------------------------

@dataclass(frozen=True)
class BenchRow:
    n: int
    digits: int
    verdict: VerdictKind
    k_by_base: dict[int, int]
    test_seconds: float
    oracle_seconds: float


def bench(b: int, ns: Iterable[int]) -> list[BenchRow]:
    """Wall-clock comparison of the full pipeline against the oracle, with
    the K levels and digit counts the pipeline found."""
    rows = []
    for n in ns:
        c = GcnCandidate(b, n)
        t0 = time.perf_counter()
        v = run_full_test(c)
        t_test = time.perf_counter() - t0
        t0 = time.perf_counter()
        trusted_is_prime(c.value)
        t_oracle = time.perf_counter() - t0
        rows.append(
            BenchRow(
                n=n,
                digits=c.digits(),
                verdict=v.kind,
                k_by_base=dict(v.k_by_base),
                test_seconds=t_test,
                oracle_seconds=t_oracle,
            )
        )
    return rows


def bench_table(b: int, rows: list[BenchRow]) -> str:
    """Tab-separated table in the shape of the timing tables for b=3/8/20."""
    lines = ["n\tdigits\tK_plus_1\tverdict\ttest_s\toracle_s"]
    for r in rows:
        kp1 = ",".join(
            f"{p}:{k + 1}" for p, k in sorted(r.k_by_base.items())
        ) or "-"
        lines.append(
            f"{r.n}\t{r.digits}\t{kp1}\t{r.verdict.value}"
            f"\t{r.test_seconds:.3f}\t{r.oracle_seconds:.3f}"
        )
    return "\n".join(lines)
