"""Command-line front end.

Exit codes: 64 for bad flags or out-of-domain values, 70 for internal
errors; `certify` uses 0 = proven, 1 = composite, 2 = probable prime only;
`verify` uses 0 = valid, 1 = invalid, 3 = malformed certificate.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import traceback

from . import __version__
from .bigarith import DomainError, decimal_str, digit_count
from .core import (
    CertificateError,
    GcnCandidate,
    PrimalityCertificate,
    VerdictKind,
    gcn_value,
    run_full_test,
    verify_certificate,
)
from .divisibility import build_patterns
from .search import (
    CheckpointError,
    ScanRecord,
    bench,
    bench_table,
    conjecture_monitor,
    hunt_pseudoprimes,
    run_scan,
)

EX_USAGE = 64
EX_SOFTWARE = 70


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("GCN_WORKERS", "1")))
    except ValueError:
        return 1


def _verdict_json(c: GcnCandidate, v) -> dict:
    return {
        "b": decimal_str(c.b),
        "n": decimal_str(c.n),
        "digits": decimal_str(c.digits()),
        "verdict": v.kind.value,
        "reason": v.reason.value if v.reason else None,
        "failing_base": decimal_str(v.failing_base) if v.failing_base else None,
        "passing_bases": [decimal_str(p) for p in v.passing_bases],
        "K_by_base": {
            decimal_str(p): decimal_str(k) for p, k in sorted(v.k_by_base.items())
        },
        "certificate": json.loads(v.certificate.to_json()) if v.certificate else None,
    }


def _cmd_value(args) -> int:
    N = gcn_value(args.b, args.n)
    print(decimal_str(N))
    print(f"digits: {digit_count(N)}")
    return 0


def _cmd_test(args) -> int:
    c = GcnCandidate(args.b, args.n)
    v = run_full_test(c)
    if args.json:
        print(json.dumps(_verdict_json(c, v), sort_keys=True))
        return 0
    print(f"C_{c.b}({c.n}): {c.digits()} digits")
    print(v.human())
    if v.k_by_base:
        ks = ", ".join(f"{p}: K={k}" for p, k in sorted(v.k_by_base.items()))
        print(f"K by base: {ks}")
    if v.certificate is not None:
        print(f"certificate: {v.certificate.to_json()}")
    return 0


def _cmd_certify(args) -> int:
    c = GcnCandidate(args.b, args.n)
    v = run_full_test(c)
    if v.kind is VerdictKind.PROVEN_PRIME:
        with open(args.emit_cert, "w", encoding="utf-8") as fh:
            fh.write(v.certificate.to_json() + "\n")
        print(f"PRIME NUMBER; certificate written to {args.emit_cert}")
        return 0
    if v.kind is VerdictKind.COMPOSITE:
        print(v.human())
        return 1
    print(v.human())
    return 2


def _cmd_verify(args) -> int:
    try:
        with open(args.cert, "r", encoding="utf-8") as fh:
            cert = PrimalityCertificate.from_json(fh.read())
        ok = verify_certificate(cert)
    except OSError as exc:
        print(f"cannot read certificate: {exc}", file=sys.stderr)
        return 3
    except CertificateError as exc:
        print(f"malformed certificate: {exc}", file=sys.stderr)
        return 3
    if ok:
        print("certificate VALID: C_b(n) is prime")
        return 0
    print("certificate INVALID")
    return 1


def _cmd_scan(args) -> int:
    written = run_scan(
        args.b,
        args.n_from,
        args.n_to,
        args.sieve_limit,
        out_path=args.out,
        stream=sys.stdout if args.out is None else None,
        workers=args.workers,
        record_timings=not args.omit_timings,
        resume=args.resume,
    )
    if args.out is not None:
        print(f"{written} records written to {args.out}", file=sys.stderr)
    if args.plot is not None:
        if args.out is None:
            print("--plot requires --out", file=sys.stderr)
            return EX_USAGE
        from .report import save_scan_plot

        with open(args.out, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()[1:]
        save_scan_plot([ScanRecord.from_json_line(l) for l in lines], args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


def _cmd_hunt(args) -> int:
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    header = json.dumps(
        {
            "format": "gcnprime-hunt",
            "tool_version": __version__,
            "b_from": decimal_str(args.b_from),
            "b_to": decimal_str(args.b_to),
            "n_from": decimal_str(args.n_from),
            "n_to": decimal_str(args.n_to),
        },
        sort_keys=True,
        separators=(",", ":"),
    )
    out.write(header + "\n")
    count = 0
    try:
        for rec in hunt_pseudoprimes(args.b_from, args.b_to, args.n_from, args.n_to):
            out.write(rec.to_json_line() + "\n")
            out.flush()
            count += 1
    finally:
        if args.out:
            out.close()
    print(f"{count} pseudoprime records", file=sys.stderr)
    return 0


def _cmd_sieve(args) -> int:
    for pat in build_patterns(args.b, args.prime_limit):
        print(pat.export_row())
    return 0


def _cmd_monitor(args) -> int:
    violations = conjecture_monitor(args.b_from, args.b_to, args.n_from, args.n_to)
    for v in violations:
        print(v.to_json_line())
    print(f"{len(violations)} violations", file=sys.stderr)
    return 0 if not violations else 1


def _cmd_bench(args) -> int:
    ns = [int(s) for s in args.ns.split(",") if s]
    rows = bench(args.b, ns)
    table = bench_table(args.b, rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(table + "\n")
        print(f"table written to {args.out}", file=sys.stderr)
    else:
        print(table)
    if args.plot:
        from .report import save_bench_plot

        save_bench_plot(args.b, rows, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcnprime",
        description="Primality tests and certificates for C_b(n) = n*b^n + 1",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("value", help="print C_b(n) and its digit count")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_value)

    p = sub.add_parser("test", help="run the full test pipeline on one candidate")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_test)

    p = sub.add_parser("certify", help="prove primality and emit a certificate")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit-cert", required=True, metavar="PATH")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("verify", help="recheck a certificate file")
    p.add_argument("--cert", required=True, metavar="PATH")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("scan", help="scan an n-range for primes of base b")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.add_argument("--sieve-limit", type=int, required=True)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--omit-timings", action="store_true",
                   help="zero the elapsed_ms fields for reproducible output")
    p.add_argument("--plot", metavar="PATH", help="render a scan figure")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("hunt", help="hunt pseudoprimes over a (b, n) box")
    p.add_argument("--b-from", type=int, required=True)
    p.add_argument("--b-to", type=int, required=True)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=_cmd_hunt)

    p = sub.add_parser("sieve", help="print the sieve patterns for base b")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--prime-limit", type=int, required=True)
    p.set_defaults(func=_cmd_sieve)

    p = sub.add_parser("monitor", help="look for n > b primes the pipeline misses")
    p.add_argument("--b-from", type=int, required=True)
    p.add_argument("--b-to", type=int, required=True)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.set_defaults(func=_cmd_monitor)

    p = sub.add_parser("bench", help="time the pipeline on chosen indices")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--ns", required=True, metavar="N1,N2,...")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--plot", metavar="PATH", help="render a timing figure")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else EX_USAGE
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_USAGE
    except CheckpointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_SOFTWARE
    except Exception:  # noqa: BLE001 - last-resort boundary
        traceback.print_exc()
        return EX_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
