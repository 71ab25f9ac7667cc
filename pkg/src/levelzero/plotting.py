"""Figure of |S_phi| per facet type, written next to the report."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_class_table(report: dict, path: str) -> str:
    facets = [f["name"] for f in report["facets"]]
    params = [" ".join(p["rep"]) for p in report["parameters"]]
    counts = [[0] * len(facets) for _ in params]
    index = {p: i for i, p in enumerate(params)}
    for j, f in enumerate(facets):
        for row in report["S"].get(f, []):
            counts[index[" ".join(row["parameter"])]][j] += 1
    fig, ax = plt.subplots(figsize=(1.2 + 0.9 * len(facets), 1.0 + 0.35 * len(params)))
    im = ax.imshow(counts, cmap="Blues", aspect="auto", vmin=0)
    for i, row in enumerate(counts):
        for j, c in enumerate(row):
            ax.text(j, i, str(c), ha="center", va="center", fontsize=8)
    ax.set_xticks(range(len(facets)))
    ax.set_xticklabels(facets, rotation=45, ha="right", fontsize=8)
    ax.set_yticks(range(len(params)))
    ax.set_yticklabels(params, fontsize=7)
    ax.set_xlabel("facet type")
    ax.set_ylabel("parameter")
    ax.set_title("|S| per facet, %s, N=%s" % (report.get("group", ""), report.get("order_bound", "")))
    fig.colorbar(im, ax=ax)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path
