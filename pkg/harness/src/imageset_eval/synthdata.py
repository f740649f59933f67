"""Synthetic stand-ins for the two evaluation datasets.

The sandbox cannot download the originals, so these generators emit files
in the exact external formats the primary CLI ingests: a UCI-layout
categorical CSV whose 22 attributes one-hot to 119 columns, and 28x28
digit-glyph rasters in IDX files.  Difficulty is calibrated so desk-scale
CNN accuracies land in a realistic band rather than saturating.
"""

from __future__ import annotations

import csv
import struct

import numpy as np
from PIL import Image, ImageDraw, ImageFont

__all__ = ["make_mushroom_csv", "make_digit_idx", "MUSHROOM_CATEGORY_COUNTS"]

# 22 attribute alphabets whose sizes sum to 119 one-hot columns.
MUSHROOM_CATEGORY_COUNTS = (6, 4, 10, 2, 9, 2, 2, 2, 12, 2, 5, 4, 4, 9, 9, 2, 4, 4, 5, 9, 6, 7)

_LETTERS = "abcdefghijklmnopqrstuvwxyz"

# attributes driving the label rule
_ODOR = 4          # 9 categories
_GILL_SIZE = 7     # 2 categories
_SPORE = 19        # 9 categories


def _alphabets() -> list[list[str]]:
    alphabets = []
    for j, size in enumerate(MUSHROOM_CATEGORY_COUNTS):
        letters = list(_LETTERS[:size])
        if j == 10:
            letters[0] = "?"  # missing-value token as its own category
        alphabets.append(letters)
    return alphabets


def make_mushroom_csv(path, n_rows: int = 8124, seed: int = 1, label_noise: float = 0.04) -> None:
    """Write a learnable mushroom-layout CSV (first column e/p, 22 attributes).

    The species rule keys on the odor-like attribute with a secondary
    gill/spore interaction; ``label_noise`` flips that fraction of labels
    so a well-trained classifier plateaus near 1 - label_noise.  Every
    category of every attribute is guaranteed to occur.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    alphabets = _alphabets()
    if n_rows < max(len(a) for a in alphabets):
        raise ValueError("n_rows too small to cover every category")
    poison_odors = {1, 3, 5, 7}       # 4 of 9 categories
    poison_spores = {0, 6}            # rescue/override branch
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for i in range(n_rows):
            choices = []
            for cats in alphabets:
                if i < len(cats):
                    choices.append(i % len(cats))  # force category coverage up front
                else:
                    choices.append(int(rng.integers(0, len(cats))))
            poisonous = choices[_ODOR] in poison_odors
            if choices[_SPORE] in poison_spores and choices[_GILL_SIZE] == 1:
                poisonous = not poisonous
            if rng.random() < label_noise:
                poisonous = not poisonous
            row = ["p" if poisonous else "e"]
            row.extend(alphabets[j][k] for j, k in enumerate(choices))
            writer.writerow(row)


def _render_digit(rng, digit: int, side: int) -> np.ndarray:
    size = int(rng.integers(14, 21))
    font = ImageFont.load_default(size=size)
    pad = side  # draw on a larger canvas, rotate, then crop the center
    canvas = Image.new("L", (side + 2 * pad, side + 2 * pad), 0)
    draw = ImageDraw.Draw(canvas)
    draw.text((pad + side // 2, pad + side // 2), str(digit), fill=255,
              font=font, anchor="mm")
    angle = float(rng.uniform(-25.0, 25.0))
    canvas = canvas.rotate(angle, resample=Image.BILINEAR)
    dx = int(rng.integers(-4, 5))
    dy = int(rng.integers(-4, 5))
    left, top = pad + dx, pad + dy
    tile = np.asarray(canvas)[top : top + side, left : left + side].copy()
    speckle = rng.random(tile.shape) < 0.04
    tile[speckle] = rng.integers(0, 256, size=int(speckle.sum()))
    return tile


def make_digit_idx(images_path, labels_path, count: int, seed: int = 1, side: int = 28) -> None:
    """Write rotated, shifted, speckled digit glyphs as an IDX file pair."""
    rng = np.random.Generator(np.random.PCG64(seed))
    images = np.zeros((count, side, side), dtype=np.uint8)
    labels = np.zeros(count, dtype=np.uint8)
    for i in range(count):
        digit = int(rng.integers(0, 10))
        images[i] = _render_digit(rng, digit, side)
        labels[i] = digit
    with open(images_path, "wb") as fh:
        fh.write(struct.pack(">IIII", 0x00000803, count, side, side))
        fh.write(images.tobytes())
    with open(labels_path, "wb") as fh:
        fh.write(struct.pack(">II", 0x00000801, count))
        fh.write(labels.tobytes())
