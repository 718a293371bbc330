"""Figure rendering for sweep and comparison reports."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def sweep_figure(report, path) -> None:
    """Per-subspace ratio ranges with the global constants marked."""
    labels = ["|".join(str(v) for v in r.s) for r in report.records]
    mins = np.array([r.min_ratio for r in report.records])
    maxs = np.array([r.max_ratio for r in report.records])
    x = np.arange(len(labels))
    width = max(6.0, 0.45 * len(labels) + 3.0)
    fig, ax = plt.subplots(figsize=(width, 4.2))
    ax.vlines(x, mins, maxs, color="steelblue", lw=3, alpha=0.6)
    ax.plot(x, mins, "v", color="navy", ms=5, label="min ratio")
    ax.plot(x, maxs, "^", color="firebrick", ms=5, label="max ratio")
    ax.axhline(report.C1_hat, color="navy", lw=1, ls="--")
    ax.axhline(report.C2_hat, color="firebrick", lw=1, ls="--")
    if report.C1_hat > 0 and report.C2_hat / report.C1_hat > 50:
        ax.set_yscale("log")
    ax.set_xticks(x)
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=8)
    ax.set_xlabel("level split s")
    qtxt = "inf" if report.q == math.inf else f"{report.q:g}"
    ax.set_ylabel("discrete / continuous ratio")
    ax.set_title(
        f"q={qtxt}, n={report.n}, d={report.d}, m={report.m}, "
        f"{report.samples} samples per subspace"
    )
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def compare_figure(rows, path, title: str = "") -> None:
    """Grouped bars of the measured constants per construction family."""
    fams = [r["family"] for r in rows]
    c1 = [r["C1_hat"] for r in rows]
    c2 = [r["C2_hat"] for r in rows]
    x = np.arange(len(fams))
    fig, ax = plt.subplots(figsize=(6.5, 4.2))
    b1 = ax.bar(x - 0.18, c1, width=0.36, color="navy", label="C1_hat")
    b2 = ax.bar(x + 0.18, c2, width=0.36, color="firebrick", label="C2_hat")
    for rect, row in zip(b1, rows):
        ax.annotate(f"m={row['m']}",
                    (rect.get_x() + rect.get_width(), rect.get_height()),
                    ha="center", va="bottom", fontsize=8)
    ax.set_xticks(x)
    ax.set_xticklabels(fams)
    ax.set_ylabel("measured constant")
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
