"""File-target rendering of bound tables and log-scale degree bands.

Imported lazily by the CLI so that data-only runs never load the
plotting stack; the file-writing backend is forced before pyplot.
"""

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .dynamics import BandReport, DegreeBoundTable


def render_band(band: BandReport, path: str) -> str:
    """Band of admissible log degrees of the single-valued inverse."""
    logd = math.log(band.degree)
    ks = [row.k for row in band.rows]
    lo = [float(row.lower) * logd for row in band.rows]
    hi = [float(row.upper) * logd for row in band.rows]
    fig, ax = plt.subplots(figsize=(5.0, 3.8))
    ax.fill_between(ks, lo, hi, color="tab:blue", alpha=0.2)
    ax.plot(ks, hi, "o-", color="tab:blue", label="k log d")
    ax.plot(ks, lo, "o-", color="tab:orange", label=f"(k/{band.ell0}) log d")
    ax.set_xlabel("k")
    ax.set_ylabel("log of the k-th degree")
    ax.set_xticks(ks)
    ax.set_title(f"admissible degree band, d = {band.degree}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_bounds(table: DegreeBoundTable, path: str) -> str:
    """Certified interval for each dynamical degree, log scale."""
    fig, ax = plt.subplots(figsize=(5.0, 3.8))
    for row in table.rows:
        lo, hi = row.lower.log_float(), row.upper.log_float()
        color = "tab:green" if row.pinned else "tab:blue"
        ax.vlines(row.k, lo, hi, color=color, linewidth=6, alpha=0.6)
        ax.plot([row.k, row.k], [lo, hi], "_", color=color, markersize=14)
    ax.set_xlabel("k")
    ax.set_ylabel("log of the k-th degree")
    ax.set_xticks([row.k for row in table.rows])
    ax.set_title(
        f"degree intervals, index {table.root.render()}"
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
