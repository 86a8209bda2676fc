"""Matplotlib figure rendering for the CLI report paths.

Figures are written to files (Agg backend, no display); each CLI
subcommand that emits delimited data can render the matching figure
alongside it via --fig.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def spectrum_figure(points=None, boundary=None, point_label: str = "eigenvalues",
                    boundary_label: str = "boundary", title: str | None = None):
    """Scatter of complex points and/or a boundary polyline, equal aspect."""
    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    if points is not None:
        pts = np.asarray(points, dtype=complex).ravel()
        ax.plot(pts.real, pts.imag, ".", ms=4, color="#1155cc", label=point_label)
    if boundary is not None:
        bnd = np.asarray(boundary, dtype=complex).ravel()
        ax.plot(bnd.real, bnd.imag, "-", lw=1.4, color="#cc2222", label=boundary_label)
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.axvline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize=9)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def disagreement_figure(times, disagreement, title: str | None = None):
    """Disagreement vs time on a log scale (linear when values hit zero)."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    t = np.asarray(times, dtype=float)
    g = np.asarray(disagreement, dtype=float)
    if np.all(g > 0):
        ax.semilogy(t, g, lw=1.2, color="#1155cc")
    else:
        ax.plot(t, g, lw=1.2, color="#1155cc")
    ax.set_xlabel("t [s]")
    ax.set_ylabel("max pairwise disagreement")
    ax.grid(True, which="both", alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def save_figure(fig, path, dpi: int = 150) -> None:
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
