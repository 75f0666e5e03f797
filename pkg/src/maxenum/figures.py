"""Figure rendering for the benchmark report path.

The report command writes a delimited summary of its runs and, next to
it, two PNG figures: the per-output delay profile of each engine and
the stateless engine's auxiliary-memory footprint against the ground
set size (flat means the footprint tracks the solution size, not the
instance size).
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def render_delay_figure(rows: list[dict], path: Path) -> Path:
    """Scatter of per-solution delays, one column per (algorithm, n)."""
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    algos = sorted({r["algorithm"] for r in rows})
    colors = plt.get_cmap("tab10")
    for idx, algo in enumerate(algos):
        xs, ys = [], []
        for r in rows:
            if r["algorithm"] != algo:
                continue
            for d in r["delay_samples"]:
                xs.append(r["n"])
                ys.append(d * 1e3)
        ax.scatter(xs, ys, s=8, alpha=0.45, label=algo, color=colors(idx))
    ax.set_xlabel("ground set size")
    ax.set_ylabel("delay between outputs [ms]")
    ax.set_yscale("log")
    ax.set_title("per-solution delay")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_memory_figure(rows: list[dict], path: Path) -> Path:
    """Peak auxiliary elements over q for the stateless engine, per size."""
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    pts = [(r["n"], r["peak_aux_elements"] / max(r["max_solution_size"], 1))
           for r in rows
           if r["algorithm"] == "stateless" and r["peak_aux_elements"] is not None]
    if pts:
        xs, ys = zip(*pts)
        ax.scatter(xs, ys, s=14, alpha=0.6, color="tab:purple")
        sizes = sorted(set(xs))
        means = [sum(y for x, y in pts if x == s) / sum(1 for x, _ in pts if x == s)
                 for s in sizes]
        ax.plot(sizes, means, color="tab:purple", label="mean")
        ax.legend()
    ax.set_xlabel("ground set size")
    ax.set_ylabel("peak auxiliary elements / q")
    ax.set_ylim(bottom=0)
    ax.set_title("stateless memory footprint")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
