"""Figure rendering for training curves and evaluation reports.

Each report series written by the CLI gets a PNG rendered next to the
delimited file.  Uses the Agg backend; safe on headless machines.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_series_figure(values, path, ylabel: str, title: str = "") -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    epochs = range(1, len(values) + 1)
    ax.plot(list(epochs), list(values), marker="o", markersize=3)
    ax.set_xlabel("epoch")
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_metre_figure(histogram: dict[int, int], path, title: str = "") -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    if histogram:
        counts = sorted(histogram.items())
        xs = [k for k, _ in counts]
        ys = [v for _, v in counts]
        colors = ["tab:orange" if x == 13 else "tab:blue" for x in xs]
        ax.bar(xs, ys, color=colors)
    ax.set_xlabel("syllables per line")
    ax.set_ylabel("lines")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_entropy_figure(entropy_by_temperature: dict[float, float], path,
                        title: str = "") -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    temps = sorted(entropy_by_temperature)
    ax.plot(temps, [entropy_by_temperature[t] for t in temps], marker="s")
    ax.set_xlabel("temperature")
    ax.set_ylabel("mean step entropy (nats)")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
