"""Figures written to files (Agg backend, no display needed)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .invariant import PhiMultiset  # noqa: E402
from .palettes import KernelAnalysis  # noqa: E402

PathLike = Union[str, Path]


def _save(fig, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_phi(phi: PhiMultiset, path: PathLike, title: str = "") -> Path:
    values = list(range(phi.p))
    counts = [phi.counts.get(v, 0) for v in values]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(values, counts, color="tab:blue")
    ax.set_xticks(values)
    ax.set_xlabel("theta value mod %d" % phi.p)
    ax.set_ylabel("colorings")
    ax.set_title(title or "Phi (%s), p=%d" % ("NT" if phi.flavor == "nt" else "all", phi.p))
    return _save(fig, path)


def plot_boundary_matrix(analysis: KernelAnalysis, path: PathLike) -> Path:
    m = np.array(analysis.matrix, dtype=int) if analysis.matrix else np.zeros((1, 1), dtype=int)
    fig, ax = plt.subplots(figsize=(1 + 0.5 * m.shape[1], 1 + 0.3 * m.shape[0]))
    im = ax.imshow(m, cmap="coolwarm", vmin=-2, vmax=2, aspect="auto")
    ax.set_xticks(range(len(analysis.generators)))
    ax.set_xticklabels(["t%d" % (i + 1) for i in range(len(analysis.generators))])
    ax.set_yticks(range(len(analysis.row_labels)))
    ax.set_yticklabels(["(%d,%d)" % r for r in analysis.row_labels], fontsize=7)
    ax.set_title("p=%d S=%s: %s" % (analysis.p, list(analysis.palette), analysis.verdict), fontsize=9)
    fig.colorbar(im, ax=ax, shrink=0.6)
    return _save(fig, path)


def plot_palette_sizes(sizes: Sequence[int], p: int, path: PathLike, lower: int = 0) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    if sizes:
        bins = np.arange(min(sizes), max(sizes) + 2) - 0.5
        ax.hist(sizes, bins=bins, color="tab:green")
    if lower:
        ax.axvline(lower - 0.5, color="k", ls="--", label="log bound %d" % lower)
        ax.legend()
    ax.set_xlabel("colors used")
    ax.set_ylabel("nontrivial colorings")
    ax.set_title("palette sizes, p=%d" % p)
    return _save(fig, path)
