"""Render a recorded sweep into figures plus a JSON digest.

Takes the CSV produced by the bench/game harnesses and writes, next to
it, a locality scatter (queries against interval length, with each
codec's guarantee line) and a failure-rate chart, plus the summary JSON.
Rendering is headless; files are the only output.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

from .errors import UsageError  # noqa: E402
from .records import load_csv, summarize  # noqa: E402


def _guide(codec: str, k: int, n: int, lengths):
    """The per-codec locality guarantee as a line over interval lengths.

    Private codecs promise queries <= (2/R) * length with R = k/n read
    off the records; the plain Hadamard decoder promises kappa + 1.
    """
    if codec == "hadamard":
        return [x + 1 for x in lengths], "kappa + 1"
    rate = k / n
    return [2.0 / rate * x for x in lengths], "2/R * length"


def render_report(csv_path, out_dir=None) -> dict:
    """Write locality.png, failure.png, and report.json for one CSV."""
    csv_path = Path(csv_path)
    out_dir = csv_path.parent if out_dir is None else Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = load_csv(csv_path)
    if not records:
        raise UsageError(f"no records in {csv_path}")
    summary = summarize(records)

    groups: dict[tuple, list] = {}
    for rec in records:
        groups.setdefault((rec.codec, rec.k, rec.n), []).append(rec)

    fig, ax = plt.subplots(figsize=(8, 5))
    for (codec, k, n), recs in sorted(groups.items()):
        xs = [r.length for r in recs]
        ys = [r.queries for r in recs]
        pts = ax.scatter(xs, ys, s=12, alpha=0.6, label=f"{codec} k={k}")
        lo, hi = min(xs), max(xs)
        line_x = sorted({lo, hi, max(lo, (lo + hi) // 2)})
        line_y, guide_name = _guide(codec, k, n, line_x)
        ax.plot(line_x, line_y, "--", color=pts.get_facecolor()[0],
                linewidth=1, label=f"{codec} bound {guide_name}")
    ax.set_xlabel("interval length (bits)")
    ax.set_ylabel("oracle queries")
    ax.set_title("amortized locality: queries vs interval length")
    ax.legend(fontsize=8)
    locality_png = out_dir / "locality.png"
    fig.tight_layout()
    fig.savefig(locality_png)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.5 * len(summary))))
    labels = list(summary)
    rates = [summary[label]["failure_rate"] for label in labels]
    ax.barh(range(len(labels)), rates, color="#a33")
    ax.set_yticks(range(len(labels)))
    ax.set_yticklabels(labels, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("decode failure rate")
    ax.set_title("failure rate per configuration")
    failure_png = out_dir / "failure.png"
    fig.tight_layout()
    fig.savefig(failure_png)
    plt.close(fig)

    summary_path = out_dir / "report.json"
    digest = {
        "source": str(csv_path),
        "records": len(records),
        "figures": [locality_png.name, failure_png.name],
        "configurations": summary,
    }
    with open(summary_path, "w", encoding="ascii") as fh:
        json.dump(digest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return {
        "figures": [str(locality_png), str(failure_png)],
        "summary_path": str(summary_path),
        "summary": summary,
    }
