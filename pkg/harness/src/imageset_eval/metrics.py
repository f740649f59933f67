"""Classification metrics: accuracy and the multiclass pairwise AUC.

The multiclass AUC is the mean over unordered class pairs of the
symmetrized two-class AUC computed from rank statistics, which makes it
insensitive to class imbalance.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np
from scipy.stats import rankdata

__all__ = ["accuracy", "two_class_auc", "hand_till_auc"]


def accuracy(predicted: np.ndarray, labels: np.ndarray) -> float:
    predicted = np.asarray(predicted)
    labels = np.asarray(labels)
    if predicted.shape != labels.shape:
        raise ValueError("predicted and labels must have the same shape")
    return float(np.mean(predicted == labels))


def two_class_auc(pos_scores, neg_scores) -> float:
    """Rank-sum AUC with midrank tie handling: P(pos > neg) + 0.5 P(pos = neg)."""
    pos = np.asarray(pos_scores, dtype=np.float64)
    neg = np.asarray(neg_scores, dtype=np.float64)
    if pos.size == 0 or neg.size == 0:
        raise ValueError("both score groups must be nonempty")
    ranks = rankdata(np.concatenate([pos, neg]))
    rank_sum = ranks[: pos.size].sum()
    return float((rank_sum - pos.size * (pos.size + 1) / 2) / (pos.size * neg.size))


def hand_till_auc(scores: np.ndarray, labels: np.ndarray) -> float:
    """Average over class pairs (i, j) of (A(i|j) + A(j|i)) / 2.

    ``scores`` is (M, C) with one column of class scores per class;
    A(i|j) ranks the class-i column over the samples of classes i and j.
    Pairs missing a class in ``labels`` are skipped; at least one pair
    must survive.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    if scores.ndim != 2:
        raise ValueError(f"scores must be (samples, classes), got shape {scores.shape}")
    if labels.shape != (scores.shape[0],):
        raise ValueError("labels must have one entry per score row")
    present = [c for c in range(scores.shape[1]) if np.any(labels == c)]
    total = 0.0
    n_pairs = 0
    for i, j in combinations(present, 2):
        mask_i = labels == i
        mask_j = labels == j
        a_ij = two_class_auc(scores[mask_i, i], scores[mask_j, i])
        a_ji = two_class_auc(scores[mask_j, j], scores[mask_i, j])
        total += (a_ij + a_ji) / 2
        n_pairs += 1
    if n_pairs == 0:
        raise ValueError("fewer than two classes present; no class pairs to average")
    return total / n_pairs
