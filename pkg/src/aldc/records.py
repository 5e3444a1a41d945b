"""Experiment records, the fixed CSV schema, and JSON summaries.

One record is one decode attempt: which codec, at which parameters,
which interval, how many probes the oracle counted, and whether the
recovered bits matched the truth. The CSV header is frozen; downstream
tooling greps it, so changing it is a format break. Channel identity is
deliberately not a CSV column: it lives in the JSON summary, keyed by
channel kind.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, fields

from .errors import UsageError

CSV_HEADER = "codec,k,n,delta,kappa,trial,L,R,queries,success,seed"


@dataclass(frozen=True)
class ExperimentRecord:
    codec: str
    k: int
    n: int
    delta: float
    kappa: int
    trial: int
    L: int
    R: int
    queries: int
    success: bool
    seed: int

    def __post_init__(self):
        if self.queries <= 0:
            raise UsageError(f"queries > 0 violated on a decode record: {self.queries}")
        if not 1 <= self.L <= self.R:
            raise UsageError(f"1 <= L <= R violated: L={self.L}, R={self.R}")

    @property
    def length(self) -> int:
        return self.R - self.L + 1

    @property
    def amortized_locality(self) -> float:
        return self.queries / self.length


_COLUMNS = CSV_HEADER.split(",")
assert _COLUMNS == [f.name for f in fields(ExperimentRecord)], "schema drift"


def _cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        # repr is the shortest round-trip form, stable across runs
        return repr(value)
    return str(value)


def format_csv(records) -> str:
    """The full CSV text, header included, with \\n line endings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_COLUMNS)
    for rec in records:
        writer.writerow([_cell(getattr(rec, col)) for col in _COLUMNS])
    return buf.getvalue()


def write_csv(records, path) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(format_csv(records))


def load_csv(path) -> list[ExperimentRecord]:
    with open(path, "r", encoding="ascii", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != _COLUMNS:
            raise UsageError(f"CSV header mismatch: expected {CSV_HEADER!r}, got {header!r}")
        out = []
        for row in reader:
            if len(row) != len(_COLUMNS):
                raise UsageError(f"CSV row has {len(row)} cells, expected {len(_COLUMNS)}")
            out.append(ExperimentRecord(
                codec=row[0],
                k=int(row[1]),
                n=int(row[2]),
                delta=float(row[3]),
                kappa=int(row[4]),
                trial=int(row[5]),
                L=int(row[6]),
                R=int(row[7]),
                queries=int(row[8]),
                success=row[9] == "1",
                seed=int(row[10]),
            ))
        return out


def summarize(records) -> dict:
    """Per-configuration aggregates: failure rate and locality statistics.

    Grouped by (codec, k, n, delta, kappa); trial count is the number of
    distinct trial indices, decode count is the number of records.
    """
    groups: dict[tuple, list[ExperimentRecord]] = {}
    for rec in records:
        groups.setdefault((rec.codec, rec.k, rec.n, rec.delta, rec.kappa), []).append(rec)
    out = {}
    for (codec, k, n, delta, kappa), recs in sorted(groups.items()):
        locs = [r.amortized_locality for r in recs]
        failures = sum(1 for r in recs if not r.success)
        out[f"{codec} k={k} n={n} delta={delta} kappa={kappa}"] = {
            "codec": codec,
            "k": k,
            "n": n,
            "delta": delta,
            "kappa": kappa,
            "trials": len({r.trial for r in recs}),
            "decodes": len(recs),
            "failures": failures,
            "failure_rate": failures / len(recs),
            "total_queries": sum(r.queries for r in recs),
            "mean_amortized_locality": sum(locs) / len(locs),
            "max_amortized_locality": max(locs),
        }
    return out


def write_summary(summary: dict, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
