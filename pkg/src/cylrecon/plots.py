"""Figure rendering for the study subcommands (growth and convergence).

Figures are written to files only; no interactive backend is touched. PNG
metadata that would vary between environments is stripped so repeated runs
produce identical bytes.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["save_convergence_figure", "save_growth_figure"]

_SAVE_KW = {"dpi": 150, "metadata": {"Software": None}}


def save_growth_figure(report, path) -> None:
    """Two panels: estimated norm vs m with the growth law, and the ratio."""
    ms = np.array([row.m for row in report.rows], dtype=float)
    grid_max = np.array([row.grid_max for row in report.rows])
    lb = np.array([row.lower_bound_point_value for row in report.rows])
    normalized = np.array([row.normalized for row in report.rows])
    law = ms * np.log(ms + 1) ** 2
    scale = np.exp(np.mean(np.log(grid_max / law)))

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    ax1.loglog(ms, grid_max, "o-", label="grid max")
    ax1.loglog(ms, lb, "s--", label="rim point")
    ax1.loglog(ms, scale * law, ":", color="gray", label=r"$c\,m\,\log^2(m+1)$")
    ax1.set_xlabel("m")
    ax1.set_ylabel("Lebesgue sum")
    ax1.set_title("operator norm estimate")
    ax1.legend(fontsize=8)

    ax2.semilogx(ms, normalized, "o-")
    ax2.set_xlabel("m")
    ax2.set_ylabel(r"max / $(m\,\log^2(m+1))$")
    ax2.set_title(f"normalized (band ratio {report.band_ratio:.2f})")
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def save_convergence_figure(records, path) -> None:
    """Uniform error vs m on a log scale."""
    ms = [rec.m for rec in records]
    errs = [max(rec.uniform_error, 1e-18) for rec in records]
    fig, ax = plt.subplots(figsize=(4.8, 3.6))
    ax.semilogy(ms, errs, "o-")
    ax.set_xlabel("m")
    ax.set_ylabel("uniform error")
    ax.set_title(f"convergence: {records[0].phantom}" if records else "convergence")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
