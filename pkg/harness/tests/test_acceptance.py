"""Secondary acceptance suite: metric correctness plus the two desk-scale
experiment reproductions.  The desk-scale tests train real CNNs and run
for minutes; deselect them with ``pytest -m "not slow"``.

Set S2I_MUSHROOM_CSV or S2I_MNIST_IMAGES/S2I_MNIST_LABELS to evaluate
against real dataset files instead of the synthetic stand-ins.
"""

from __future__ import annotations

import contextlib
import os
import time
from pathlib import Path

import numpy as np
import pytest
from sklearn.metrics import roc_auc_score

from imageset_eval import TrainBudget, hand_till_auc, mnist_job, mushroom_job
from imageset_eval.runner import run_bootstrap_experiment
from imageset_eval.synthdata import make_digit_idx, make_mushroom_csv

from test_metrics import exhaustive_pairwise_auc


@contextlib.contextmanager
def criterion(name: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[acceptance] {name}: FAIL ({time.perf_counter() - start:.1f}s)")
        raise
    print(f"[acceptance] {name}: PASS ({time.perf_counter() - start:.1f}s)")


def test_metric_correctness():
    with criterion("metric-correctness"):
        start = time.perf_counter()
        rng = np.random.Generator(np.random.PCG64(42))
        # two-class case equals the standard AUC
        for _ in range(25):
            n = int(rng.integers(8, 60))
            labels = rng.integers(0, 2, size=n)
            if labels.min() == labels.max():
                labels[:2] = [0, 1]
            probs = np.round(rng.random(n), 2)
            scores = np.column_stack([1 - probs, probs])
            assert hand_till_auc(scores, labels) == pytest.approx(
                roc_auc_score(labels, probs), abs=1e-12
            )
        # three-class fixture equals exhaustive pair counting
        scores = np.array(
            [
                [0.7, 0.2, 0.1],
                [0.4, 0.4, 0.2],
                [0.2, 0.6, 0.2],
                [0.3, 0.5, 0.2],
                [0.1, 0.3, 0.6],
                [0.2, 0.2, 0.6],
            ]
        )
        labels = np.array([0, 0, 1, 1, 2, 2])
        assert hand_till_auc(scores, labels) == pytest.approx(
            exhaustive_pairwise_auc(scores, labels), abs=1e-12
        )
        assert time.perf_counter() - start < 5.0


@pytest.mark.slow
def test_desk_scale_mushroom(tmp_path):
    with criterion("desk-scale-mushroom"):
        env_csv = os.environ.get("S2I_MUSHROOM_CSV")
        if env_csv:
            csv_path = Path(env_csv)
        else:
            csv_path = tmp_path / "mushroom.csv"
            make_mushroom_csv(csv_path, n_rows=8124, seed=1, label_noise=0.04)
        report = run_bootstrap_experiment(
            mushroom_job(csv_path),
            ["SDIC", "SDIC_C"],
            n_bootstraps=5,
            seed=1,
            workdir=tmp_path / "work",
            include_rf=False,
        )
        sdic_c = report.median("SDIC_C", "accuracy")
        sdic = report.median("SDIC", "accuracy")
        print(f"  SDIC_C median accuracy {sdic_c:.3f}, SDIC {sdic:.3f}")
        assert abs(sdic_c - 0.958) <= 0.02
        assert sdic_c >= sdic


@pytest.mark.slow
def test_desk_scale_mnist_ordering(tmp_path):
    with criterion("desk-scale-mnist-ordering"):
        env_images = os.environ.get("S2I_MNIST_IMAGES")
        env_labels = os.environ.get("S2I_MNIST_LABELS")
        if env_images and env_labels:
            images_path, labels_path = Path(env_images), Path(env_labels)
        else:
            images_path, labels_path = tmp_path / "im", tmp_path / "lb"
            make_digit_idx(images_path, labels_path, count=14000, seed=1)
        report = run_bootstrap_experiment(
            mnist_job(images_path, labels_path),
            ["ASIS", "SDIC", "RAND"],
            n_bootstraps=3,
            seed=1,
            budget=TrainBudget(epochs=5, n_train=10000, n_val=2000, n_test=2000),
            workdir=tmp_path / "work",
            include_rf=False,
        )
        asis = report.median("ASIS", "accuracy")
        sdic = report.median("SDIC", "accuracy")
        rand = report.median("RAND", "accuracy")
        print(f"  medians: ASIS {asis:.3f}  SDIC {sdic:.3f}  RAND {rand:.3f}")
        assert asis > sdic >= rand
