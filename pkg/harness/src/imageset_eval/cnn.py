"""Keras model construction and training for the evaluation CNN."""

from __future__ import annotations

import os

os.environ.setdefault("TF_CPP_MIN_LOG_LEVEL", "3")

import numpy as np
import tensorflow as tf

from .config import CnnConfig, ConfigurationError
from .metrics import accuracy, hand_till_auc

__all__ = ["build_cnn", "train_and_evaluate"]


def build_cnn(config: CnnConfig, image_side: int, n_classes: int) -> tf.keras.Model:
    """Two valid convolutions, one maxpool, two dropout/dense stages.

    The image must survive both convolutions and the pooling stage:
    side - 2 * (kernel - 1) >= pool.
    """
    if config.dense[1] != n_classes:
        raise ConfigurationError(
            f"final dense width {config.dense[1]} != n_classes {n_classes}"
        )
    after_convs = image_side - 2 * (config.kernel - 1)
    if after_convs < config.pool:
        raise ConfigurationError(
            f"{image_side}x{image_side} images are too small for two {config.kernel}x"
            f"{config.kernel} convolutions plus {config.pool}x{config.pool} pooling"
        )
    if config.optimizer != "adadelta":
        raise ConfigurationError(f"unsupported optimizer {config.optimizer!r}")
    if config.loss != "categorical_crossentropy":
        raise ConfigurationError(f"unsupported loss {config.loss!r}")

    model = tf.keras.Sequential(
        [
            tf.keras.layers.Input((image_side, image_side, 1)),
            tf.keras.layers.Conv2D(config.filters[0], config.kernel, activation="relu"),
            tf.keras.layers.Conv2D(config.filters[1], config.kernel, activation="relu"),
            tf.keras.layers.MaxPooling2D(config.pool),
            tf.keras.layers.Dropout(config.dropouts[0]),
            tf.keras.layers.Flatten(),
            tf.keras.layers.Dense(config.dense[0], activation=config.activations[0]),
            tf.keras.layers.Dropout(config.dropouts[1]),
            tf.keras.layers.Dense(config.dense[1], activation=config.activations[1]),
        ]
    )
    model.compile(
        optimizer=tf.keras.optimizers.Adadelta(learning_rate=config.learning_rate),
        loss=config.loss,
        metrics=["accuracy"],
    )
    return model


def _to_model_input(pixels: np.ndarray) -> np.ndarray:
    return pixels.astype(np.float32)[..., np.newaxis]


def train_and_evaluate(
    config: CnnConfig,
    n_classes: int,
    train: tuple[np.ndarray, np.ndarray],
    val: tuple[np.ndarray, np.ndarray],
    test: tuple[np.ndarray, np.ndarray],
    seed: int = 0,
    patience: int = 5,
) -> dict:
    """Train on (pixels, labels) stacks and report test accuracy and AUC.

    Early stopping watches validation accuracy and restores the best
    weights.  ``seed`` pins the framework RNG so reruns match.
    """
    tf.keras.utils.set_random_seed(seed)
    x_train, y_train = train
    x_val, y_val = val
    x_test, y_test = test
    side = x_train.shape[1]
    model = build_cnn(config, side, n_classes)
    model.fit(
        _to_model_input(x_train),
        tf.keras.utils.to_categorical(y_train, n_classes),
        validation_data=(
            _to_model_input(x_val),
            tf.keras.utils.to_categorical(y_val, n_classes),
        ),
        epochs=config.epochs,
        batch_size=config.batch_size,
        verbose=0,
        callbacks=[
            tf.keras.callbacks.EarlyStopping(
                monitor="val_accuracy", patience=patience, restore_best_weights=True
            )
        ],
    )
    probs = model.predict(_to_model_input(x_test), verbose=0)
    predicted = probs.argmax(axis=1)
    return {
        "accuracy": accuracy(predicted, y_test),
        "auc": hand_till_auc(probs, y_test),
    }
