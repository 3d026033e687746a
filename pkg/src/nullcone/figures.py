"""Figure rendering for reports and convergence tables.

Pure file output (Agg backend): each renderer takes already-computed data
and writes one PNG next to the delimited or JSON output it illustrates.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .suites import CONVERGENCE_COLUMNS, SuiteReport

__all__ = ["render_convergence", "render_report"]

_FLOOR = 1e-17


def render_convergence(rows: list[dict], path: str) -> None:
    """Log-scale residuals against band limit, one line per residual."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    L = [row["band_limit"] for row in rows]
    for column in CONVERGENCE_COLUMNS[1:]:
        values = [max(row[column], _FLOOR) for row in rows]
        ax.semilogy(L, values, marker="o", label=column)
    ax.set_xlabel("band limit L")
    ax.set_ylabel("residual (max norm / relative)")
    ax.set_title("spectral convergence of identity residuals")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_report(report: SuiteReport, path: str) -> None:
    """Horizontal bars of check values against their tolerances."""
    checks = report.checks
    names = [c.name for c in checks]
    values = [max(abs(c.value), _FLOOR) for c in checks]
    tols = [c.tolerance for c in checks]
    colors = ["tab:green" if c.passed else "tab:red" for c in checks]

    height = max(2.5, 0.32 * len(checks) + 1.2)
    fig, ax = plt.subplots(figsize=(8.0, height))
    y = np.arange(len(checks))
    ax.barh(y, values, color=colors, alpha=0.8)
    ax.scatter(tols, y, marker="|", s=200, color="black", label="tolerance")
    ax.set_xscale("log")
    ax.set_yticks(y)
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("residual (log scale)")
    ax.set_title(
        f"suite {report.suite}  L={report.band_limit}  "
        f"{'PASS' if report.passed else 'FAIL'}"
    )
    ax.grid(True, axis="x", which="both", alpha=0.3)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
