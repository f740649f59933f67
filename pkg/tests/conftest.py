"""Shared fixtures: random datasets, IDX fixture writing, synthetic digit
rasters, and a mushroom-layout categorical CSV generator."""

from __future__ import annotations

import csv
import struct
from pathlib import Path

import numpy as np
import pytest
from PIL import Image, ImageDraw, ImageFont

from sparse2image import SparseDataset

# Per-attribute category counts for the mushroom-layout stand-in; 22
# attributes whose observed one-hot width sums to 119 (so P = 12 and the
# padded tail is 25 cells).  Attribute 10 includes '?' as a category.
MUSHROOM_CATEGORY_COUNTS = (6, 4, 10, 2, 9, 2, 2, 2, 12, 2, 5, 4, 4, 9, 9, 2, 4, 4, 5, 9, 6, 7)

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def mushroom_alphabets():
    alphabets = []
    for j, size in enumerate(MUSHROOM_CATEGORY_COUNTS):
        letters = list(_LETTERS[:size])
        if j == 10:
            letters[0] = "?"
        alphabets.append(letters)
    return alphabets


def write_mushroom_csv(path: Path, n_rows: int = 8124, seed: int = 7) -> None:
    """Random UCI-layout CSV: first column e/p target, 22 category columns.

    Every category of every attribute is guaranteed to appear, so one-hot
    encoding always yields 119 columns.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    alphabets = mushroom_alphabets()
    assert n_rows >= max(len(a) for a in alphabets)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for i in range(n_rows):
            target = "e" if rng.random() < 0.5 else "p"
            row = [target]
            for cats in alphabets:
                if i < len(cats):
                    row.append(cats[i])  # force full category coverage up front
                else:
                    row.append(cats[int(rng.integers(0, len(cats)))])
            writer.writerow(row)


def write_idx_pair(images: np.ndarray, labels: np.ndarray, images_path, labels_path) -> None:
    """Write a (M, R, C) uint8 image stack and labels as an IDX file pair."""
    m, r, c = images.shape
    with open(images_path, "wb") as fh:
        fh.write(struct.pack(">IIII", 0x00000803, m, r, c))
        fh.write(np.ascontiguousarray(images, dtype=np.uint8).tobytes())
    with open(labels_path, "wb") as fh:
        fh.write(struct.pack(">II", 0x00000801, m))
        fh.write(np.ascontiguousarray(labels, dtype=np.uint8).tobytes())


def synth_digit_images(count: int, seed: int = 0, side: int = 28):
    """Render digit glyphs at random offsets into (count, side, side) uint8."""
    rng = np.random.Generator(np.random.PCG64(seed))
    font = ImageFont.load_default(size=18)
    images = np.zeros((count, side, side), dtype=np.uint8)
    labels = np.zeros(count, dtype=np.uint8)
    for i in range(count):
        digit = int(rng.integers(0, 10))
        canvas = Image.new("L", (side, side), 0)
        draw = ImageDraw.Draw(canvas)
        dx = int(rng.integers(4, 12))
        dy = int(rng.integers(0, 8))
        draw.text((dx, dy), str(digit), fill=255, font=font)
        images[i] = np.asarray(canvas)
        labels[i] = digit
    return images, labels


def random_dataset(rng, m, n, n_classes=3) -> SparseDataset:
    values = rng.normal(size=(m, n))
    labels = rng.integers(0, n_classes, size=m)
    names = tuple(f"f{j}" for j in range(n))
    return SparseDataset(values, names, labels, n_classes)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(1234))
