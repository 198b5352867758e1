"""Bar charts for the per-degree reports.

Figures are written straight to files with the Agg backend; the CLI calls
these when ``--figure PATH`` is given.  The output format follows the file
extension.
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, path: str) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None} if str(path).endswith(".png") else None)
    plt.close(fig)
    return path


def bar_chart(path: str, degrees: Sequence[int], series: dict, title: str, ylabel: str) -> str:
    """Grouped bars, one group per degree and one bar per entry of ``series``."""
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    width = 0.8 / max(len(series), 1)
    for k, (label, values) in enumerate(series.items()):
        offset = (k - (len(series) - 1) / 2) * width
        ax.bar([d + offset for d in degrees], values, width=width, label=label)
    ax.set_xticks(list(degrees))
    ax.set_xlabel("degree")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    if len(series) > 1:
        ax.legend(frameon=False)
    return _save(fig, path)


def plot_freeness(report, path: str) -> str:
    rows = report.per_degree
    degrees = [r["degree"] for r in rows]
    series = {
        "free prediction": [r["free_prediction"] for r in rows],
        "span count": [r["span_count"] for r in rows],
        "kernel": [r["kernel_dim"] for r in rows],
    }
    title = f"{report.group}, J={{{','.join(map(str, report.parabolic))}}}: {report.verdict}"
    return bar_chart(path, degrees, series, title, "dimension")


def plot_hilbert(dims: Sequence[int], path: str, title: str) -> str:
    return bar_chart(path, list(range(len(dims))), {"dimension": list(dims)}, title, "dimension")


def plot_corner(presentation, path: str) -> str:
    rows = presentation.per_degree
    cfg = presentation.config
    title = f"corner span, (d1, d2) = ({cfg['d1']}, {cfg['d2']})"
    return bar_chart(path, [r["degree"] for r in rows], {"span": [r["span_dimension"] for r in rows]}, title, "dimension")
