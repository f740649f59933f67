"""Feature orderings: identity, seeded random, and the correlation chain.

The correlation chain seeds with the most correlated feature pair, then
repeatedly appends the unused feature most correlated with the last one
appended, reseeding whenever the best remaining chain correlation drops
to zero or below.  Comparisons are on signed correlation values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .dataset import SparseDataset

__all__ = [
    "FeatureOrdering",
    "CorrMatrix",
    "pearson_matrix",
    "sdic_ordering",
    "identity_ordering",
    "random_ordering",
]


@dataclass(frozen=True)
class FeatureOrdering:
    """A permutation of the feature indices 0..N-1."""

    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(i) for i in self.order))
        n = len(self.order)
        if n == 0:
            raise ValueError("ordering must not be empty")
        if sorted(self.order) != list(range(n)):
            raise ValueError("order is not a permutation of 0..N-1")

    def __len__(self):
        return len(self.order)

    def __getitem__(self, rank):
        return self.order[rank]


@dataclass(frozen=True)
class CorrMatrix:
    """Symmetric N x N matrix of pairwise Pearson correlations.

    Entries involving a zero-variance column are 0 by convention,
    including that column's diagonal entry.
    """

    n: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.float64)
        object.__setattr__(self, "entries", entries)
        if entries.shape != (self.n, self.n):
            raise ValueError(f"entries shape {entries.shape} != ({self.n}, {self.n})")
        if self.n and not np.array_equal(entries, entries.T):
            raise ValueError("entries must be symmetric")
        if self.n and np.abs(entries).max() > 1.0 + 1e-12:
            raise ValueError("entries must lie in [-1, 1]")


def pearson_matrix(dataset: "SparseDataset") -> CorrMatrix:
    """Pairwise Pearson correlations of the dataset's feature columns.

    Uses sample (n-1) covariance normalization; the choice cancels in the
    ratio except for the zero-variance convention.  Requires at least two
    samples.
    """
    values = np.asarray(dataset.values, dtype=np.float64)
    m, n = values.shape
    if m < 2:
        raise ValueError(f"need at least 2 samples to correlate, got {m}")
    centered = values - values.mean(axis=0)
    cov = centered.T @ centered / (m - 1)
    var = np.diag(cov).copy()
    sd = np.sqrt(np.maximum(var, 0.0))
    live = sd > 0.0
    denom = np.outer(sd, sd)
    denom[~np.outer(live, live)] = 1.0  # dead pairs overwritten below
    corr = cov / denom
    corr[~np.outer(live, live)] = 0.0
    corr = (corr + corr.T) / 2.0  # BLAS products are not exactly symmetric
    np.fill_diagonal(corr, np.where(live, 1.0, 0.0))
    np.clip(corr, -1.0, 1.0, out=corr)
    return CorrMatrix(n=n, entries=corr)


def sdic_ordering(corr: CorrMatrix) -> FeatureOrdering:
    """Greedy correlation-chain permutation of the feature indices.

    Seeding picks the unused off-diagonal pair with the largest signed
    correlation (ties: lexicographically smallest (min, max) index pair)
    and emits the smaller index first.  The chain then repeatedly emits
    the unused feature most correlated with the last emitted one; a best
    value <= 0 forces a reseed.  A single leftover feature at a reseed
    point is emitted directly.
    """
    n = corr.n
    if n < 1:
        raise ValueError("need at least one feature")
    c = corr.entries
    unused = np.ones(n, dtype=bool)
    order: list[int] = []
    reseed = True
    while unused.any():
        if reseed:
            alive = np.flatnonzero(unused)
            if alive.size == 1:
                order.append(int(alive[0]))
                unused[alive[0]] = False
                continue
            sub = c[np.ix_(alive, alive)].copy()
            np.fill_diagonal(sub, -np.inf)
            flat = int(np.argmax(sub))  # row-major first max = (min, max) tie rule
            i = int(alive[flat // alive.size])
            j = int(alive[flat % alive.size])
            if i > j:
                i, j = j, i
            order.extend((i, j))
            unused[i] = unused[j] = False
            reseed = False
        else:
            last = order[-1]
            row = np.where(unused, c[last], -np.inf)
            k = int(np.argmax(row))  # first max = smallest index on ties
            if row[k] > 0.0:
                order.append(k)
                unused[k] = False
            else:
                reseed = True
    return FeatureOrdering(tuple(order))


def identity_ordering(n_features: int) -> FeatureOrdering:
    """The unchanged ordering 0, 1, ..., N-1."""
    if n_features < 1:
        raise ValueError(f"n_features must be >= 1, got {n_features}")
    return FeatureOrdering(tuple(range(n_features)))


def random_ordering(n_features: int, seed: int) -> FeatureOrdering:
    """Uniform random permutation from a PCG64 generator; seed-deterministic."""
    if n_features < 1:
        raise ValueError(f"n_features must be >= 1, got {n_features}")
    rng = np.random.Generator(np.random.PCG64(seed))
    return FeatureOrdering(tuple(int(i) for i in rng.permutation(n_features)))
