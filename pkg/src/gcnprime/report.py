"""Figure rendering for scan and bench output.

Figures are written straight to files next to the delimited output; the Agg
backend keeps this usable on headless machines.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .core import VerdictKind  # noqa: E402
from .search import BenchRow, ScanRecord  # noqa: E402

_VERDICT_COLORS = {
    VerdictKind.COMPOSITE: "#b0b0b0",
    VerdictKind.PROBABLE_PRIME_TEST1: "#f0a030",
    VerdictKind.PROBABLE_PRIME_TEST2: "#e06020",
    VerdictKind.PROVEN_PRIME: "#2060c0",
}


def save_bench_plot(b: int, rows: list[BenchRow], path: str) -> None:
    """Timing of the pipeline vs. the oracle, against the size of C_b(n)."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    digits = [r.digits for r in rows]
    ax1.plot(digits, [r.test_seconds for r in rows], "o-", label="full test")
    ax1.plot(digits, [r.oracle_seconds for r in rows], "s--", label="oracle")
    ax1.set_xlabel("digits of C_b(n)")
    ax1.set_ylabel("seconds")
    ax1.set_title(f"b = {b}: wall clock")
    ax1.legend()
    ks = [max(r.k_by_base.values(), default=0) + 1 for r in rows]
    ax2.bar([str(r.n) for r in rows], ks, color="#2060c0")
    ax2.set_xlabel("n")
    ax2.set_ylabel("K + 1 (max over bases)")
    ax2.set_title("level search depth")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_scan_plot(records: list[ScanRecord], path: str) -> None:
    """Digit growth over the scanned range, colored by verdict."""
    fig, ax = plt.subplots(figsize=(8, 4))
    for kind in VerdictKind:
        pts = [(r.n, r.digits) for r in records if r.verdict is kind]
        if not pts:
            continue
        xs, ys = zip(*pts)
        ax.scatter(xs, ys, s=8, color=_VERDICT_COLORS[kind], label=kind.value)
    ax.set_xlabel("n")
    ax.set_ylabel("digits of C_b(n)")
    if records:
        ax.set_title(f"scan of b = {records[0].b}")
    ax.legend(markerscale=2, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
