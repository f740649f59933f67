"""Dataset-to-imageset transformation with fit/apply semantics.

A transformer is fitted on training data only (the correlation-chain
schemes compute their ordering from the training correlations) and the
same frozen transformation is then applied to validation and test data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Optional

import numpy as np

from .errors import ParseError, ShapeMismatchError
from .grids import FillOrder, circular_fill_order, image_side, linear_fill_order, raster_fill_order
from .ordering import FeatureOrdering, identity_ordering, pearson_matrix, random_ordering, sdic_ordering

if TYPE_CHECKING:
    from .dataset import SparseDataset

__all__ = [
    "Scheme",
    "FillVariant",
    "Transformer",
    "ImageSet",
    "fit_transformer",
    "apply_transformer",
    "serialize_transformer",
    "deserialize_transformer",
    "MODEL_FORMAT_VERSION",
]

MODEL_FORMAT_VERSION = 1


class Scheme(str, Enum):
    ASIS = "ASIS"
    RAND = "RAND"
    SDIC = "SDIC"
    SDIC_C = "SDIC_C"


class FillVariant(str, Enum):
    LINEAR = "LINEAR"
    CIRCULAR = "CIRCULAR"
    RASTER = "RASTER"


DEFAULT_FILL = {
    Scheme.ASIS: FillVariant.LINEAR,
    Scheme.RAND: FillVariant.LINEAR,
    Scheme.SDIC: FillVariant.LINEAR,
    Scheme.SDIC_C: FillVariant.CIRCULAR,
}

_FILL_BUILDERS = {
    FillVariant.LINEAR: linear_fill_order,
    FillVariant.CIRCULAR: circular_fill_order,
    FillVariant.RASTER: raster_fill_order,
}


@dataclass(frozen=True)
class Transformer:
    """Fitted, immutable transformation state."""

    scheme: Scheme
    fill_variant: FillVariant
    side: int
    n_features: int
    ordering: FeatureOrdering
    seed: Optional[int] = None
    format_version: int = MODEL_FORMAT_VERSION

    def __post_init__(self):
        if self.side != image_side(self.n_features):
            raise ValueError(
                f"side {self.side} != image_side({self.n_features}) = "
                f"{image_side(self.n_features)}"
            )
        if len(self.ordering) != self.n_features:
            raise ValueError("ordering length must equal n_features")

    def fill_order(self) -> FillOrder:
        return _FILL_BUILDERS[self.fill_variant](self.side)

    @property
    def provenance(self) -> str:
        tag = f"{self.scheme.value}:{self.fill_variant.value}:n{self.n_features}:p{self.side}"
        if self.seed is not None:
            tag += f":seed{self.seed}"
        return tag


@dataclass(frozen=True)
class ImageSet:
    """Stack of M square images produced by applying one transformer."""

    count: int
    side: int
    pixels: np.ndarray
    provenance: str = ""

    def __post_init__(self):
        pixels = np.ascontiguousarray(np.asarray(self.pixels, dtype=np.float64))
        object.__setattr__(self, "pixels", pixels)
        if pixels.shape != (self.count, self.side, self.side):
            raise ValueError(
                f"pixels shape {pixels.shape} != ({self.count}, {self.side}, {self.side})"
            )


def fit_transformer(
    train: "SparseDataset",
    scheme: Scheme,
    fill_variant: Optional[FillVariant] = None,
    seed: Optional[int] = None,
) -> Transformer:
    """Fit a transformer on training data.

    The side length comes from the feature count; the ordering comes from
    the scheme (SDIC variants correlate the training columns, RAND uses
    the given seed, defaulting to 0).  The fill variant defaults per
    scheme: circular for SDIC_C, linear otherwise.
    """
    scheme = Scheme(scheme)
    if train.n_samples == 0 or train.n_features == 0:
        raise ValueError("cannot fit on an empty dataset")
    n = train.n_features
    if scheme is Scheme.ASIS:
        ordering = identity_ordering(n)
        seed = None
    elif scheme is Scheme.RAND:
        seed = 0 if seed is None else int(seed)
        ordering = random_ordering(n, seed)
    else:
        if train.n_samples < 2:
            raise ValueError(f"{scheme.value} needs at least 2 training samples")
        ordering = sdic_ordering(pearson_matrix(train))
        seed = None
    fill = DEFAULT_FILL[scheme] if fill_variant is None else FillVariant(fill_variant)
    return Transformer(
        scheme=scheme,
        fill_variant=fill,
        side=image_side(n),
        n_features=n,
        ordering=ordering,
        seed=seed,
    )


def apply_transformer(transformer: Transformer, data: "SparseDataset") -> ImageSet:
    """Write each sample's features into a P x P image along the fill order.

    The pixel at fill rank r receives feature ``ordering[r]``; the
    P*P - N cells at the tail ranks stay exactly 0.
    """
    if data.n_features != transformer.n_features:
        raise ShapeMismatchError(
            f"dataset has {data.n_features} features but transformer expects "
            f"{transformer.n_features}"
        )
    m, n = data.values.shape
    p = transformer.side
    cells = transformer.fill_order().cells[:n]
    rows = np.fromiter((rc[0] for rc in cells), dtype=np.intp, count=n)
    cols = np.fromiter((rc[1] for rc in cells), dtype=np.intp, count=n)
    order = np.asarray(transformer.ordering.order, dtype=np.intp)
    pixels = np.zeros((m, p, p), dtype=np.float64)
    pixels[:, rows, cols] = data.values[:, order]
    return ImageSet(count=m, side=p, pixels=pixels, provenance=transformer.provenance)


def serialize_transformer(transformer: Transformer) -> bytes:
    """UTF-8 JSON document; byte-stable for identical transformers."""
    doc = {
        "format_version": transformer.format_version,
        "scheme": transformer.scheme.value,
        "fill_variant": transformer.fill_variant.value,
        "side": transformer.side,
        "n_features": transformer.n_features,
        "ordering": list(transformer.ordering.order),
        "seed": transformer.seed,
    }
    return (json.dumps(doc, sort_keys=True) + "\n").encode("utf-8")


def deserialize_transformer(data: bytes) -> Transformer:
    """Inverse of :func:`serialize_transformer`, with format validation."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise ParseError("model file is not UTF-8", offset=exc.start) from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed model JSON: {exc.msg}", offset=exc.pos) from exc
    if not isinstance(doc, dict):
        raise ParseError("model document must be a JSON object")
    missing = {"format_version", "scheme", "fill_variant", "side", "n_features", "ordering"} - doc.keys()
    if missing:
        raise ParseError(f"model document missing fields: {sorted(missing)}")
    if doc["format_version"] != MODEL_FORMAT_VERSION:
        raise ParseError(f"unsupported model format_version {doc['format_version']!r}")
    try:
        scheme = Scheme(doc["scheme"])
    except ValueError:
        raise ParseError(f"unknown scheme tag {doc['scheme']!r}") from None
    try:
        fill = FillVariant(doc["fill_variant"])
    except ValueError:
        raise ParseError(f"unknown fill_variant tag {doc['fill_variant']!r}") from None
    try:
        ordering = FeatureOrdering(tuple(doc["ordering"]))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"invalid ordering: {exc}") from None
    seed = doc.get("seed")
    try:
        return Transformer(
            scheme=scheme,
            fill_variant=fill,
            side=int(doc["side"]),
            n_features=int(doc["n_features"]),
            ordering=ordering,
            seed=None if seed is None else int(seed),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"inconsistent model fields: {exc}") from None
