"""Figures written next to the CLI reports (matplotlib, Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

# no version string in the PNG metadata, so reruns give identical bytes
_META = {"Software": None}


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=_META)
    plt.close(fig)
    return path


def plot_masks(path: Path, pairs, grid) -> Path:
    """``|m_B(xi)|`` over the grid for each pair."""
    from .transform import mask_eval

    fig, ax = plt.subplots(figsize=(6, 3.5))
    for p in pairs:
        ax.plot(grid, np.abs(mask_eval(p.B, np.asarray(grid))), label=f"N={p.N}, B={list(p.B)}")
    ax.set_xlabel(r"$\xi$")
    ax.set_ylabel(r"$|m_B(\xi)|$")
    ax.legend(fontsize=7)
    return _save(fig, path)


def plot_atoms(path: Path, atoms, weights) -> Path:
    fig, ax = plt.subplots(figsize=(6, 3))
    ax.vlines(atoms, 0, weights, lw=0.6)
    ax.set_xlabel("atom")
    ax.set_ylabel("weight")
    return _save(fig, path)


def plot_curve(path: Path, x, ys: dict, xlabel: str, ylabel: str,
               hlines=(), logy: bool = False, marker: str | None = None) -> Path:
    """Generic line plot; ``ys`` maps labels to series sharing ``x``."""
    fig, ax = plt.subplots(figsize=(6, 3.5))
    for label, y in ys.items():
        ax.plot(x, y, label=label, marker=marker, ms=3)
    for h in hlines:
        ax.axhline(h, color="0.5", ls="--", lw=0.8)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if len(ys) > 1:
        ax.legend(fontsize=7)
    return _save(fig, path)


def plot_bars(path: Path, labels, values, xlabel: str, ylabel: str, ref=None) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3))
    pos = np.arange(len(values))
    ax.bar(pos, values, width=0.4, label="observed")
    if ref is not None:
        ax.bar(pos + 0.4, ref, width=0.4, label="expected")
        ax.legend(fontsize=7)
    ax.set_xticks(pos + (0.2 if ref is not None else 0))
    ax.set_xticklabels([str(v) for v in labels])
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    return _save(fig, path)
