"""Figures written next to the delimited reports (``--figures DIR``)."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_SAVE = dict(dpi=120, bbox_inches="tight", metadata={"Software": None})


def _target(directory: str, name: str) -> str:
    os.makedirs(directory, exist_ok=True)
    return os.path.join(directory, name)


def plot_sweep(blocks: list[dict], directory: str, name: str = "sweep.png") -> str:
    """Number of ground subgroups and r0 for every partition vector."""
    labels = ["(" + b["k"] + ")" for b in blocks]
    counts = [len(b["ground"]) for b in blocks]
    fig, ax = plt.subplots(figsize=(max(4, 0.9 * len(blocks)), 3.2))
    bars = ax.bar(range(len(blocks)), counts, color="0.55", edgecolor="k")
    for bar, b in zip(bars, blocks):
        tag = "empty" if b["r0"] is None else f"r0={b['r0']}"
        ax.annotate(tag, (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                    ha="center", va="bottom", fontsize=8, xytext=(0, 2),
                    textcoords="offset points")
    ax.set_xticks(range(len(blocks)), labels, rotation=30, ha="right")
    ax.set_ylabel("ground subgroups")
    ax.set_ylim(0, max(counts + [1]) + 1)
    ax.set_xlabel("partition vector k")
    path = _target(directory, name)
    fig.savefig(path, **_SAVE)
    plt.close(fig)
    return path


def plot_moduli(A: list[int], k: str, moduli: list[int], p_max: int, directory: str,
                name: str = "zline.png") -> str:
    fig, ax = plt.subplots(figsize=(6, 2.2))
    hits = set(moduli)
    ps = list(range(1, p_max + 1))
    ax.bar(ps, [1 if p in hits else 0 for p in ps], color="k", width=0.8)
    ax.set_yticks([0, 1], ["no", "yes"])
    ax.set_xlabel("modulus p")
    ax.set_title(f"pZ ground for A={A}, k=({k})", fontsize=9)
    path = _target(directory, name)
    fig.savefig(path, **_SAVE)
    plt.close(fig)
    return path


def plot_index_bounds(lower: int, upper: int, index: int | None, directory: str,
                      name: str = "index_bounds.png") -> str:
    """Computed index against the lower/upper product bounds (log scale)."""
    fig, ax = plt.subplots(figsize=(5, 1.8))
    ax.set_xscale("log")
    ax.hlines(0, lower, upper, color="0.6", lw=6)
    ax.plot([lower, upper], [0, 0], "|", color="k", ms=18)
    if index is not None:
        ax.plot([index], [0], "o", color="C3", label=f"index {index}")
        ax.legend(loc="upper right", fontsize=8, frameon=False)
    ax.set_yticks([])
    ax.set_xlabel(f"bounds [{lower}, {upper}]")
    path = _target(directory, name)
    fig.savefig(path, **_SAVE)
    plt.close(fig)
    return path


def plot_energy_histogram(hist: dict, min_energy, directory: str,
                          name: str = "energy.png") -> str:
    """Distribution of window energies over all configurations."""
    energies = sorted(hist)
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar([float(e) for e in energies], [hist[e] for e in energies],
           color=["C3" if e == min_energy else "0.55" for e in energies], width=0.8)
    ax.set_yscale("log")
    ax.set_xlabel("energy")
    ax.set_ylabel("configurations")
    path = _target(directory, name)
    fig.savefig(path, **_SAVE)
    plt.close(fig)
    return path
