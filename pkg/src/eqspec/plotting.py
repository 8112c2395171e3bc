"""Standalone SVG figures for sweeps and optimizer traces.

Plots are a convenience; no check depends on them.  Output is byte-stable:
the SVG hash salt is fixed and date metadata is dropped.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_STYLE = {
    "svg.hashsalt": "eqspec",
    "svg.fonttype": "path",
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "figure.figsize": (6.0, 3.8),
}


def line_plot(path, x, series: dict, xlabel: str, ylabel: str, title: str = "", hlines: dict | None = None, logx=False):
    """One line per entry of ``series``; optional labelled horizontal reference lines."""
    path = Path(path)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        for label in sorted(series):
            ax.plot(x, series[label], marker="o", ms=3, lw=1.2, label=label)
        for label, y in sorted((hlines or {}).items()):
            ax.axhline(y, ls="--", lw=0.9, color="0.35", label=label)
        if logx:
            ax.set_xscale("log")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        ax.legend(frameon=False, fontsize=8)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
        plt.close(fig)
    return path
