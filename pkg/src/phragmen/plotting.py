"""Matplotlib figures written next to the text/JSON reports.

Figures are illustrations only; all values are converted to float at the
last moment, after every exact computation is done.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .model import LoadDistribution, voter_loads  # noqa: E402

__all__ = ["plot_load_distribution", "plot_seq_trace", "plot_enestrom_weights", "plot_seats"]

STYLE = {
    "figure.figsize": (6.4, 3.6),
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
}


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_load_distribution(profile, x: LoadDistribution, path, title=None):
    """Stacked bar per voter, one segment per committee member carried."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        voters = range(profile.n)
        bottom = [0.0] * profile.n
        members = profile.sort_candidates({c for (_, c) in x.entries})
        cmap = plt.get_cmap("tab20")
        for idx, c in enumerate(members):
            heights = [float(x.get(i, c)) for i in voters]
            ax.bar([i + 1 for i in voters], heights, bottom=bottom, label=c,
                   color=cmap(idx % 20), edgecolor="white", linewidth=0.5)
            bottom = [b + h for b, h in zip(bottom, heights)]
        ax.axhline(float(x.k) / profile.n, color="0.4", linestyle="--", linewidth=0.8,
                   label="k/n")
        ax.set_xlabel("voter")
        ax.set_ylabel("load")
        if profile.n <= 30:
            ax.set_xticks([i + 1 for i in voters])
        top = max(voter_loads(x), default=0)
        ax.set_ylim(0, max(float(top), float(x.k) / profile.n) * 1.15 or 1)
        ncol = min(len(members) + 1, 8)
        rows = -(-(len(members) + 1) // ncol)
        ax.legend(ncol=ncol, fontsize=7, frameon=False, loc="lower center",
                  bbox_to_anchor=(0.5, 1.0))
        if title:
            ax.set_title(title, pad=8 + 11 * rows)
        return _save(fig, path)


def plot_seq_trace(trace, profile, path, title=None):
    """Score of every unelected candidate per round; filled markers = elected."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        rounds = [r.index for r in trace.rounds]
        for c in profile.candidates:
            pts = [(r.index, float(r.scores[c])) for r in trace.rounds if c in r.scores]
            if not pts:
                continue
            ax.plot(*zip(*pts), marker=".", linewidth=0.8, markersize=3, alpha=0.7)
        chosen = [(r.index, float(r.scores[r.chosen])) for r in trace.rounds]
        ax.plot(*zip(*chosen), "ko-", linewidth=1.4, markersize=4, label="max load")
        for (j, s), r in zip(chosen, trace.rounds):
            ax.annotate(r.chosen, (j, s), textcoords="offset points", xytext=(0, 5),
                        ha="center", fontsize=6)
        ax.set_xticks(rounds)
        ax.set_xlabel("round")
        ax.set_ylabel("score (new max load)")
        ax.legend(frameon=False, fontsize=7)
        if title:
            ax.set_title(title)
        return _save(fig, path)


def plot_enestrom_weights(trace, path, title=None):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        n = len(trace.rounds[0].weights) if trace.rounds else 0
        totals = [float(n)] + [float(sum(r.weights)) for r in trace.rounds]
        ax.step(range(len(totals)), totals, where="post", color="k", label="total weight")
        ax.set_xlabel("round")
        ax.set_ylabel("voting weight")
        ax.set_xticks(range(len(totals)))
        ax.legend(frameon=False, fontsize=7)
        if title:
            ax.set_title(title)
        return _save(fig, path)


def plot_seats(votes, distributions, path, title=None):
    """Grouped bars: ``distributions`` maps a label to one seat tuple."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        labels = list(distributions)
        width = 0.8 / max(len(labels), 1)
        for idx, label in enumerate(labels):
            seats = distributions[label]
            xs = [j + 1 + (idx - (len(labels) - 1) / 2) * width for j in range(len(votes))]
            ax.bar(xs, seats, width=width, label=label)
        ax.set_xticks(range(1, len(votes) + 1))
        ax.set_xticklabels([f"P{j + 1}\n({v})" for j, v in enumerate(votes)])
        ax.set_ylabel("seats")
        ax.legend(frameon=False, fontsize=7)
        if title:
            ax.set_title(title)
        return _save(fig, path)
