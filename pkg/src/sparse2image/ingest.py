"""Dataset loading: IDX image files, categorical CSV one-hot encoding,
binary feature inversion, and seeded bootstrap splitting."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dataset import SparseDataset
from .errors import ParseError

__all__ = [
    "CategoricalTable",
    "SplitSpec",
    "read_idx",
    "read_categorical_csv",
    "one_hot_encode",
    "invert_features",
    "bootstrap_split",
]

IDX_IMAGES_MAGIC = 0x00000803
IDX_LABELS_MAGIC = 0x00000801

TARGET_CODES = {"e": 0, "edible": 0, "p": 1, "poisonous": 1}


@dataclass(frozen=True)
class CategoricalTable:
    """Rows of string categories plus a target label per row."""

    rows: tuple[tuple[str, ...], ...]
    target: tuple[str, ...]

    def __post_init__(self):
        if len(self.rows) != len(self.target):
            raise ValueError("rows and target lengths differ")
        if not self.rows:
            raise ValueError("table is empty")
        width = len(self.rows[0])
        if width == 0:
            raise ValueError("rows have no attributes")
        if any(len(row) != width for row in self.rows):
            raise ValueError("all rows must have the same attribute count")

    @property
    def n_attributes(self) -> int:
        return len(self.rows[0])


@dataclass(frozen=True)
class SplitSpec:
    """Requested train/validation/test sizes plus the shuffle seed."""

    n_train: int
    n_val: int
    n_test: int
    seed: int

    def __post_init__(self):
        if min(self.n_train, self.n_val, self.n_test) < 0:
            raise ValueError("split sizes must be nonnegative")


def _read_be_u32(data: bytes, offset: int, path) -> int:
    if offset + 4 > len(data):
        raise ParseError(f"{path}: truncated header", offset=len(data))
    return int.from_bytes(data[offset : offset + 4], "big")


def read_idx(images_path, labels_path) -> SparseDataset:
    """Load an IDX image/label file pair, flattening images row-major.

    Big-endian headers: images carry magic 0x00000803 then count, rows,
    cols; labels carry 0x00000801 then count.  Pixel bytes are kept as
    raw 0..255 values.
    """
    images_path, labels_path = Path(images_path), Path(labels_path)
    img = images_path.read_bytes()
    magic = _read_be_u32(img, 0, images_path)
    if magic != IDX_IMAGES_MAGIC:
        raise ParseError(f"{images_path}: bad images magic 0x{magic:08x}", offset=0)
    count = _read_be_u32(img, 4, images_path)
    rows = _read_be_u32(img, 8, images_path)
    cols = _read_be_u32(img, 12, images_path)
    payload = img[16:]
    if len(payload) != count * rows * cols:
        raise ParseError(
            f"{images_path}: payload is {len(payload)} bytes, expected {count * rows * cols}",
            offset=16,
        )

    lab = labels_path.read_bytes()
    magic = _read_be_u32(lab, 0, labels_path)
    if magic != IDX_LABELS_MAGIC:
        raise ParseError(f"{labels_path}: bad labels magic 0x{magic:08x}", offset=0)
    lab_count = _read_be_u32(lab, 4, labels_path)
    if lab_count != count:
        raise ParseError(
            f"{labels_path}: {lab_count} labels for {count} images", offset=4
        )
    if len(lab) - 8 != count:
        raise ParseError(
            f"{labels_path}: payload is {len(lab) - 8} bytes, expected {count}",
            offset=8,
        )

    values = np.frombuffer(payload, dtype=np.uint8).astype(np.float64)
    values = values.reshape(count, rows * cols)
    labels = np.frombuffer(lab[8:], dtype=np.uint8).astype(np.int64)
    n_classes = int(labels.max()) + 1 if count else 1
    names = tuple(f"px{r:02d}{c:02d}" for r in range(rows) for c in range(cols))
    return SparseDataset(values, names, labels, n_classes)


def read_categorical_csv(path) -> CategoricalTable:
    """UCI Mushroom layout: no header, first column target, the rest categories."""
    path = Path(path)
    rows, target = [], []
    with open(path, newline="") as fh:
        for lineno, record in enumerate(csv.reader(fh), start=1):
            if not record:
                continue
            if len(record) < 2:
                raise ParseError(f"{path}:{lineno}: row has no attribute columns")
            target.append(record[0].strip())
            rows.append(tuple(f.strip() for f in record[1:]))
    if not rows:
        raise ParseError(f"{path}: no data rows")
    return CategoricalTable(rows=tuple(rows), target=tuple(target))


def one_hot_encode(table: CategoricalTable, categories=None) -> SparseDataset:
    """Expand each attribute into one binary column per category.

    ``categories`` (one sorted list per attribute) may come from a table
    encoded earlier; by default the categories observed in ``table`` are
    used, missing-value tokens such as '?' counted like any other.  A row
    holding a category absent from the lists is invalid input.
    """
    n_attr = table.n_attributes
    if categories is None:
        categories = [
            sorted({row[j] for row in table.rows}) for j in range(n_attr)
        ]
    else:
        categories = [list(cats) for cats in categories]
        if len(categories) != n_attr:
            raise ValueError(
                f"got category lists for {len(categories)} attributes, table has {n_attr}"
            )

    lookup = [{cat: k for k, cat in enumerate(cats)} for cats in categories]
    offsets = np.cumsum([0] + [len(cats) for cats in categories])
    n_cols = int(offsets[-1])
    m = len(table.rows)

    values = np.zeros((m, n_cols), dtype=np.float64)
    for i, row in enumerate(table.rows):
        for j, cat in enumerate(row):
            k = lookup[j].get(cat)
            if k is None:
                raise ValueError(
                    f"row {i}: unseen category {cat!r} for attribute {j}"
                )
            values[i, offsets[j] + k] = 1.0

    labels = np.empty(m, dtype=np.int64)
    for i, t in enumerate(table.target):
        code = TARGET_CODES.get(t)
        if code is None:
            raise ValueError(f"row {i}: unknown target label {t!r}")
        labels[i] = code

    names = tuple(
        f"attr{j:02d}={cat}" for j in range(n_attr) for cat in categories[j]
    )
    return SparseDataset(values, names, labels, n_classes=2)


def invert_features(dataset: SparseDataset, k: int, seed: int) -> SparseDataset:
    """Flip k seeded-random binary columns via x -> 1 - x.

    The column choice depends only on (n_features, k, seed), so applying
    the same inversion to the train/val/test subsets of one bootstrap
    touches the same columns; applying it twice restores the original.
    """
    n = dataset.n_features
    if k < 0 or k > n:
        raise ValueError(f"k must be in 0..{n}, got {k}")
    if k == 0:
        return dataset
    rng = np.random.Generator(np.random.PCG64(seed))
    chosen = rng.choice(n, size=k, replace=False)
    values = dataset.values.copy()
    values[:, chosen] = 1.0 - values[:, chosen]
    return SparseDataset(values, dataset.feature_names, dataset.labels, dataset.n_classes)


def bootstrap_split(
    dataset: SparseDataset, spec: SplitSpec
) -> tuple[SparseDataset, SparseDataset, SparseDataset]:
    """Disjoint seeded train/val/test subsets of exactly the requested sizes.

    A PCG64-seeded shuffle of all row indices is sliced contiguously, so
    the same seed always yields the same split.
    """
    m = dataset.n_samples
    total = spec.n_train + spec.n_val + spec.n_test
    if total > m:
        raise ValueError(f"requested {total} samples from a dataset of {m}")
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    perm = rng.permutation(m)
    a, b = spec.n_train, spec.n_train + spec.n_val
    return (
        dataset.take(perm[:a]),
        dataset.take(perm[a:b]),
        dataset.take(perm[b : b + spec.n_test]),
    )
