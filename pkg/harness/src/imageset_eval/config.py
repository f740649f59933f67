"""Experiment configuration: CNN layer stacks, training budgets, dataset jobs."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

__all__ = ["ConfigurationError", "CnnConfig", "TrainBudget", "DatasetJob",
           "mnist_cnn_config", "mushroom_cnn_config", "mnist_job", "mushroom_job"]


class ConfigurationError(ValueError):
    """The requested experiment cannot be built as configured."""


@dataclass(frozen=True)
class CnnConfig:
    """Layer stack: conv -> conv -> maxpool -> dropout -> dense -> dropout -> dense."""

    filters: tuple[int, int]
    kernel: int
    dropouts: tuple[float, float]
    dense: tuple[int, int]
    pool: int = 2
    activations: tuple[str, str] = ("relu", "softmax")
    optimizer: str = "adadelta"
    loss: str = "categorical_crossentropy"
    learning_rate: float = 1.0
    epochs: int = 12
    batch_size: int = 128


def mnist_cnn_config(epochs: int = 12, batch_size: int = 128) -> CnnConfig:
    return CnnConfig(
        filters=(32, 64),
        kernel=3,
        dropouts=(0.25, 0.5),
        dense=(128, 10),
        epochs=epochs,
        batch_size=batch_size,
    )


def mushroom_cnn_config(epochs: int = 30, batch_size: int = 64) -> CnnConfig:
    return CnnConfig(
        filters=(36, 72),
        kernel=6,
        dropouts=(0.3, 0.2),
        dense=(64, 2),
        epochs=epochs,
        batch_size=batch_size,
    )


@dataclass(frozen=True)
class TrainBudget:
    """Desk-scale caps layered over a dataset job's defaults."""

    epochs: Optional[int] = None
    batch_size: Optional[int] = None
    n_train: Optional[int] = None
    n_val: Optional[int] = None
    n_test: Optional[int] = None
    patience: int = 5
    rf_estimators: int = 2000


@dataclass(frozen=True)
class DatasetJob:
    """Everything the runner needs to evaluate one dataset."""

    name: str
    cnn: CnnConfig
    n_train: int
    n_val: int
    n_test: int
    invert_count: int = 0
    scale_pixels: bool = False  # divide by 255 before training
    # ingest flags for the primary CLI
    ingest_format: str = "csv"
    csv_path: Optional[str] = None
    images_path: Optional[str] = None
    labels_path: Optional[str] = None

    def with_budget(self, budget: TrainBudget) -> "DatasetJob":
        cnn = self.cnn
        if budget.epochs is not None:
            cnn = replace(cnn, epochs=budget.epochs)
        if budget.batch_size is not None:
            cnn = replace(cnn, batch_size=budget.batch_size)
        return replace(
            self,
            cnn=cnn,
            n_train=budget.n_train if budget.n_train is not None else self.n_train,
            n_val=budget.n_val if budget.n_val is not None else self.n_val,
            n_test=budget.n_test if budget.n_test is not None else self.n_test,
        )


def mnist_job(images_path, labels_path) -> DatasetJob:
    """Full-scale digit job: 60000:5000:5000 split, no inversion, 0-255 scaling."""
    return DatasetJob(
        name="mnist",
        cnn=mnist_cnn_config(),
        n_train=60000,
        n_val=5000,
        n_test=5000,
        scale_pixels=True,
        ingest_format="idx",
        images_path=str(images_path),
        labels_path=str(labels_path),
    )


def mushroom_job(csv_path) -> DatasetJob:
    """Binary mushroom job: 4124:2000:2000 split, 20 inverted columns per bootstrap."""
    return DatasetJob(
        name="mushroom",
        cnn=mushroom_cnn_config(),
        n_train=4124,
        n_val=2000,
        n_test=2000,
        invert_count=20,
        ingest_format="csv",
        csv_path=str(csv_path),
    )
