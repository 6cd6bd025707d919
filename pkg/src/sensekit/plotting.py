"""Static figure rendering for the report commands.

Uses the non-interactive backend and strips the writer's software tag so
repeated runs produce byte-identical image files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg", force=True)

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_SAVE_OPTS = {"dpi": 100, "metadata": {"Software": None}}


def save_learning_curves(series: dict[str, list[tuple[int, float]]], path,
                         title: str = "Held-out accuracy by annotations") -> None:
    """One line per labeled series of (n_annotated, accuracy) points."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for label in sorted(series):
        points = series[label]
        ax.plot([n for n, _ in points], [a for _, a in points],
                marker=".", markersize=4, linewidth=1.2, label=label)
    ax.set_xlabel("annotated examples")
    ax.set_ylabel("accuracy")
    ax.set_ylim(0.0, 1.02)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    if series:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)


def save_coverage_accuracy(points, path,
                           title: str = "Coverage/accuracy trade-off") -> None:
    """Coverage and accuracy against the certainty threshold; thresholds
    with no decisions contribute no accuracy point."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    thresholds = [p.threshold for p in points]
    ax.plot(thresholds, [p.coverage for p in points],
            marker=".", linewidth=1.2, label="coverage")
    decided = [(p.threshold, p.accuracy) for p in points if p.accuracy is not None]
    if decided:
        ax.plot([t for t, _ in decided], [a for _, a in decided],
                marker=".", linewidth=1.2, label="accuracy")
    ax.set_xlabel("certainty threshold")
    ax.set_ylabel("ratio")
    ax.set_ylim(0.0, 1.02)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)


def save_accuracy_bars(per_verb, path, title: str = "Per-verb accuracy") -> None:
    """Bar chart over verbs; verbs without decisions are drawn at zero."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    verbs = sorted(per_verb)
    values = [per_verb[v].accuracy or 0.0 for v in verbs]
    ax.bar(range(len(verbs)), values, width=0.6)
    ax.set_xticks(range(len(verbs)))
    ax.set_xticklabels(verbs, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("accuracy")
    ax.set_ylim(0.0, 1.02)
    ax.set_title(title)
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)
