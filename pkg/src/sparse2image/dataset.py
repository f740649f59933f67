"""In-memory dataset container and the on-disk dataset directory layout.

A dataset directory is the handoff unit between CLI subcommands and to the
evaluation harness: ``values.npy`` (float64, M x N), ``labels.npy``
(int64, M) and ``meta.json`` with feature names, class count and a short
provenance string.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .arrayio import read_npy, write_npy
from .errors import ParseError

__all__ = ["SparseDataset", "save_dataset_dir", "load_dataset_dir"]

META_FORMAT_VERSION = 1


@dataclass(frozen=True)
class SparseDataset:
    """M x N sample matrix with feature identifiers and integer class labels."""

    values: np.ndarray
    feature_names: tuple[str, ...]
    labels: np.ndarray
    n_classes: int

    def __post_init__(self):
        values = np.ascontiguousarray(np.asarray(self.values, dtype=np.float64))
        labels = np.asarray(self.labels, dtype=np.int64)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        if values.ndim != 2:
            raise ValueError(f"values must be 2-D, got shape {values.shape}")
        m, n = values.shape
        if len(self.feature_names) != n:
            raise ValueError(
                f"feature_names length {len(self.feature_names)} != {n} columns"
            )
        if labels.shape != (m,):
            raise ValueError(f"labels length {labels.shape} != {m} rows")
        if self.n_classes < 1:
            raise ValueError("n_classes must be positive")
        if m and (labels.min() < 0 or labels.max() >= self.n_classes):
            raise ValueError("labels must satisfy 0 <= label < n_classes")

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]

    @property
    def n_features(self) -> int:
        return self.values.shape[1]

    def take(self, indices) -> "SparseDataset":
        """Row subset in the given index order."""
        idx = np.asarray(indices, dtype=np.int64)
        return SparseDataset(
            self.values[idx], self.feature_names, self.labels[idx], self.n_classes
        )


def save_dataset_dir(dataset: SparseDataset, path, provenance: str = "") -> None:
    """Write ``values.npy`` + ``labels.npy`` + ``meta.json`` under ``path``.

    Output bytes depend only on the dataset and the provenance string, so
    rerunning a pipeline with the same seeds reproduces files exactly.
    """
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    write_npy(out / "values.npy", dataset.values)
    write_npy(out / "labels.npy", dataset.labels)
    meta = {
        "format_version": META_FORMAT_VERSION,
        "feature_names": list(dataset.feature_names),
        "n_classes": dataset.n_classes,
        "provenance": provenance,
    }
    (out / "meta.json").write_text(json.dumps(meta, sort_keys=True) + "\n")


def load_dataset_dir(path) -> SparseDataset:
    """Inverse of :func:`save_dataset_dir`."""
    src = Path(path)
    meta_path = src / "meta.json"
    if not meta_path.is_file():
        raise ParseError(f"{src} is not a dataset directory (no meta.json)")
    try:
        meta = json.loads(meta_path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed meta.json: {exc.msg}", offset=exc.pos) from exc
    version = meta.get("format_version")
    if version != META_FORMAT_VERSION:
        raise ParseError(f"unsupported dataset meta format_version {version!r}")
    values = read_npy(src / "values.npy")
    labels = read_npy(src / "labels.npy")
    return SparseDataset(
        values=values,
        feature_names=tuple(meta["feature_names"]),
        labels=labels,
        n_classes=int(meta["n_classes"]),
    )
