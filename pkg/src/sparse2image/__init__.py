"""sparse2image: sparse tabular datasets to CNN-ready structured imagesets.

Five transformation schemes are provided: identity ordering (ASIS),
seeded random ordering (RAND), and correlation-chain ordering with a
linear (SDIC) or circular (SDIC_C) fill, plus a plain row-major RASTER
fill variant.  Transformers are fitted on training data and applied
unchanged to validation and test data.
"""

from .arrayio import read_array, read_npy, render_preview, write_array, write_npy
from .dataset import SparseDataset, load_dataset_dir, save_dataset_dir
from .errors import ParseError, ShapeMismatchError
from .grids import FillOrder, circular_fill_order, image_side, linear_fill_order, raster_fill_order
from .ingest import (
    CategoricalTable,
    SplitSpec,
    bootstrap_split,
    invert_features,
    one_hot_encode,
    read_categorical_csv,
    read_idx,
)
from .ordering import (
    CorrMatrix,
    FeatureOrdering,
    identity_ordering,
    pearson_matrix,
    random_ordering,
    sdic_ordering,
)
from .transformer import (
    FillVariant,
    ImageSet,
    Scheme,
    Transformer,
    apply_transformer,
    deserialize_transformer,
    fit_transformer,
    serialize_transformer,
)

__version__ = "0.1.0"

__all__ = [
    "CategoricalTable",
    "CorrMatrix",
    "FeatureOrdering",
    "FillOrder",
    "FillVariant",
    "ImageSet",
    "ParseError",
    "Scheme",
    "ShapeMismatchError",
    "SparseDataset",
    "SplitSpec",
    "Transformer",
    "apply_transformer",
    "bootstrap_split",
    "circular_fill_order",
    "deserialize_transformer",
    "fit_transformer",
    "identity_ordering",
    "image_side",
    "invert_features",
    "linear_fill_order",
    "load_dataset_dir",
    "one_hot_encode",
    "pearson_matrix",
    "random_ordering",
    "raster_fill_order",
    "read_array",
    "read_categorical_csv",
    "read_idx",
    "read_npy",
    "render_preview",
    "save_dataset_dir",
    "sdic_ordering",
    "serialize_transformer",
    "write_array",
    "write_npy",
]
