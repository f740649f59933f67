"""imageset_eval: bootstrap evaluation harness for sparse2image imagesets.

Reproduces the evaluation protocol at desk scale: a small CNN per
transformation scheme, a random forest baseline on the raw features,
seeded bootstraps sharing one split per round, and accuracy plus
pairwise-AUC reporting with medians and interquartile ranges.
"""

from .config import (
    CnnConfig,
    ConfigurationError,
    DatasetJob,
    TrainBudget,
    mnist_cnn_config,
    mnist_job,
    mushroom_cnn_config,
    mushroom_job,
)
from .metrics import accuracy, hand_till_auc, two_class_auc
from .report import BootstrapRecord, BootstrapReport, aggregate

__version__ = "0.1.0"

__all__ = [
    "BootstrapRecord",
    "BootstrapReport",
    "CnnConfig",
    "ConfigurationError",
    "DatasetJob",
    "TrainBudget",
    "accuracy",
    "aggregate",
    "hand_till_auc",
    "mnist_cnn_config",
    "mnist_job",
    "mushroom_cnn_config",
    "mushroom_job",
    "two_class_auc",
]
