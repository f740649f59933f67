"""Random forest baseline on the raw sparse features.

The forest sees the flat feature matrix, never the imagesets: it is
invariant to feature permutation, so the transformation schemes are
irrelevant to it and it is reported once per bootstrap.
"""

from __future__ import annotations

import numpy as np
from sklearn.ensemble import RandomForestClassifier

from .metrics import accuracy, hand_till_auc

__all__ = ["rf_baseline"]


def rf_baseline(
    train: tuple[np.ndarray, np.ndarray],
    test: tuple[np.ndarray, np.ndarray],
    n_estimators: int = 2000,
    seed: int = 0,
) -> dict:
    """Fit a forest on (values, labels) and report test accuracy and AUC."""
    x_train, y_train = train
    x_test, y_test = test
    classes = np.unique(y_train)
    if classes.size < 2:
        raise ValueError("training labels contain a single class")
    forest = RandomForestClassifier(
        n_estimators=n_estimators, random_state=seed, n_jobs=-1
    )
    forest.fit(x_train, y_train)
    probs = forest.predict_proba(x_test)
    # probability columns follow forest.classes_; widen to dense class ids
    n_classes = int(max(y_train.max(), y_test.max())) + 1
    scores = np.zeros((len(y_test), n_classes))
    scores[:, forest.classes_.astype(int)] = probs
    predicted = scores.argmax(axis=1)
    return {
        "accuracy": accuracy(predicted, y_test),
        "auc": hand_till_auc(scores, y_test),
    }
