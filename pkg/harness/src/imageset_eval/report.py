"""Per-bootstrap records, median/IQR aggregation, and result artifacts."""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

__all__ = ["BootstrapRecord", "BootstrapReport", "aggregate",
           "write_records_csv", "read_records_csv", "write_report_json", "render_boxplot"]

METRICS = ("accuracy", "auc")


@dataclass(frozen=True)
class BootstrapRecord:
    bootstrap: int
    scheme: str
    accuracy: float
    auc: float


def aggregate(records: list[BootstrapRecord]) -> dict:
    """Per scheme and metric: median plus the (q1, q3) interquartile range."""
    out: dict = {}
    for record in records:
        out.setdefault(record.scheme, {})
    for scheme in out:
        rows = [r for r in records if r.scheme == scheme]
        for metric in METRICS:
            values = np.array([getattr(r, metric) for r in rows], dtype=np.float64)
            out[scheme][metric] = {
                "median": float(np.median(values)),
                "iqr": [float(np.percentile(values, 25)), float(np.percentile(values, 75))],
            }
    return out


@dataclass(frozen=True)
class BootstrapReport:
    dataset: str
    records: tuple[BootstrapRecord, ...]

    @property
    def aggregates(self) -> dict:
        return aggregate(list(self.records))

    def median(self, scheme: str, metric: str = "accuracy") -> float:
        return self.aggregates[scheme][metric]["median"]

    def schemes(self) -> list[str]:
        seen: list[str] = []
        for record in self.records:
            if record.scheme not in seen:
                seen.append(record.scheme)
        return seen

    def summary_lines(self) -> list[str]:
        lines = [f"dataset: {self.dataset} ({len(self.records)} records)"]
        for scheme in self.schemes():
            agg = self.aggregates[scheme]
            acc, auc = agg["accuracy"], agg["auc"]
            lines.append(
                f"  {scheme:8s} accuracy {acc['median']:.3f} "
                f"[{acc['iqr'][0]:.3f}-{acc['iqr'][1]:.3f}]  "
                f"auc {auc['median']:.3f} [{auc['iqr'][0]:.3f}-{auc['iqr'][1]:.3f}]"
            )
        return lines


def write_records_csv(records, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["bootstrap", "scheme", "accuracy", "auc"])
        writer.writeheader()
        for record in records:
            writer.writerow(asdict(record))


def read_records_csv(path) -> list[BootstrapRecord]:
    records = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            records.append(
                BootstrapRecord(
                    bootstrap=int(row["bootstrap"]),
                    scheme=row["scheme"],
                    accuracy=float(row["accuracy"]),
                    auc=float(row["auc"]),
                )
            )
    return records


def write_report_json(report: BootstrapReport, path) -> None:
    doc = {
        "dataset": report.dataset,
        "records": [asdict(r) for r in report.records],
        "aggregates": report.aggregates,
        "notes": "DI transformation not included (out of scope).",
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def render_boxplot(report: BootstrapReport, path, metric: str = "auc") -> None:
    """One box per scheme over the bootstrap values of the chosen metric."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    schemes = report.schemes()
    data = [
        [getattr(r, metric) for r in report.records if r.scheme == scheme]
        for scheme in schemes
    ]
    fig, ax = plt.subplots(figsize=(1.2 * len(schemes) + 2, 4))
    ax.boxplot(data, tick_labels=schemes)
    ax.set_ylabel(metric)
    ax.set_title(f"{report.dataset}: {metric} per scheme")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
