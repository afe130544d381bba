"""Static figures for homology tables and Euler-characteristic reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .chromatic import EulerReport  # noqa: E402
from .tables import HomologyTable  # noqa: E402


def _annotated_heatmap(ax, grid: np.ndarray, row_labels, title: str, ylabel: str) -> None:
    ax.imshow(grid, cmap="Blues", aspect="auto", origin="lower")
    for (r, c), v in np.ndenumerate(grid):
        if v:
            ax.text(c, r, str(int(v)), ha="center", va="center", fontsize=7)
    ax.set_xticks(range(grid.shape[1]))
    ax.set_yticks(range(len(row_labels)))
    ax.set_yticklabels(row_labels)
    ax.set_xlabel("q-degree d")
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=9)


def plot_homology(table: HomologyTable, path: str) -> None:
    """One heatmap panel per homological degree (rows: t-exponent ``a``)."""
    degrees = sorted({k[0] for k in table.entries}) or [0]
    max_a = max([k[1] for k in table.entries] + [0])
    fig, axes = plt.subplots(1, len(degrees), figsize=(2.6 * len(degrees) + 1, 2.8), squeeze=False)
    for ax, i in zip(axes[0], degrees):
        grid = np.zeros((max_a + 1, table.D + 1), dtype=int)
        for (j, a, d), v in table.entries.items():
            if j == i:
                grid[a, d] = v
        _annotated_heatmap(ax, grid, range(max_a + 1), f"{table.index} = {i}", "t^-1 exponent a")
    fig.suptitle(f"homology dimensions ({table.construction}, D={table.D})", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_euler(report: EulerReport, path: str, title: str = "Euler characteristic") -> None:
    labels = [f"({a},{d})" for a, d, *_ in report.rows]
    x = np.arange(len(labels))
    chain = [r[2] for r in report.rows]
    hom = [r[3] for r in report.rows]
    poly = [r[4] for r in report.rows]
    fig, ax = plt.subplots(figsize=(max(4, 0.35 * len(labels) + 2), 3))
    ax.bar(x - 0.25, chain, 0.25, label="chain")
    ax.bar(x, hom, 0.25, label="homology")
    ax.bar(x + 0.25, poly, 0.25, label="polynomial")
    ax.set_xticks(x)
    ax.set_xticklabels(labels, rotation=90, fontsize=6)
    ax.set_xlabel("bidegree (a, d)")
    ax.axhline(0, color="k", lw=0.5)
    ax.legend(fontsize=7, frameon=False)
    ax.set_title(f"{title}: {'pass' if report.passed else 'FAIL'}", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
