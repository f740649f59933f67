"""Imageset persistence (NPY v1.0) and preview grid rendering.

The container is written and parsed here byte for byte rather than through
numpy's own save/load so that malformed files fail with located parse
errors; numpy remains interoperable with the output (and the tests read
our files with ``np.load`` and vice versa).
"""

from __future__ import annotations

import ast
from pathlib import Path
from typing import Sequence

import numpy as np
from PIL import Image

from .errors import ParseError

__all__ = ["write_npy", "read_npy", "write_array", "read_array", "render_preview"]

_MAGIC = b"\x93NUMPY"
_VERSION = b"\x01\x00"
_ALIGN = 64

# dtypes the container is allowed to carry: imageset pixels and labels
_DESCR_TO_DTYPE = {
    "<f8": np.dtype("<f8"),
    "<f4": np.dtype("<f4"),
    "<i8": np.dtype("<i8"),
}
_KIND_TO_DESCR = {("f", 8): "<f8", ("f", 4): "<f4", ("i", 8): "<i8"}


def _build_preamble(descr: str, shape: tuple[int, ...]) -> bytes:
    header = "{'descr': '%s', 'fortran_order': False, 'shape': %s, }" % (
        descr,
        str(tuple(int(s) for s in shape)),
    )
    base = len(_MAGIC) + len(_VERSION) + 2  # magic, version, u16 header length
    total = -(-(base + len(header) + 1) // _ALIGN) * _ALIGN
    header = header + " " * (total - base - len(header) - 1) + "\n"
    if len(header) > 0xFFFF:
        raise ValueError("header too long for NPY v1.0")
    return _MAGIC + _VERSION + len(header).to_bytes(2, "little") + header.encode("latin1")


def write_npy(path, array: np.ndarray) -> None:
    """Write a C-contiguous little-endian NPY v1.0 file."""
    arr = np.asarray(array)
    key = (arr.dtype.kind, arr.dtype.itemsize)
    if key not in _KIND_TO_DESCR:
        raise ValueError(f"unsupported dtype {arr.dtype} for NPY output")
    descr = _KIND_TO_DESCR[key]
    arr = np.ascontiguousarray(arr.astype(_DESCR_TO_DTYPE[descr], copy=False))
    path = Path(path)
    try:
        with open(path, "wb") as fh:
            fh.write(_build_preamble(descr, arr.shape))
            fh.write(arr.tobytes())
    except OSError as exc:
        raise OSError(f"failed writing {path}: {exc}") from exc


def read_npy(path) -> np.ndarray:
    """Read an NPY v1.0 file written by :func:`write_npy` (or numpy)."""
    path = Path(path)
    data = path.read_bytes()
    if len(data) < 10 or data[:6] != _MAGIC:
        raise ParseError(f"{path}: bad NPY magic", offset=0)
    if data[6:8] != _VERSION:
        raise ParseError(
            f"{path}: unsupported NPY version {data[6]}.{data[7]}", offset=6
        )
    hlen = int.from_bytes(data[8:10], "little")
    if len(data) < 10 + hlen:
        raise ParseError(f"{path}: truncated header", offset=len(data))
    try:
        meta = ast.literal_eval(data[10 : 10 + hlen].decode("latin1"))
    except (SyntaxError, ValueError) as exc:
        raise ParseError(f"{path}: malformed header dict: {exc}", offset=10) from None
    if not isinstance(meta, dict) or set(meta) != {"descr", "fortran_order", "shape"}:
        raise ParseError(f"{path}: header keys must be descr/fortran_order/shape", offset=10)
    descr = meta["descr"]
    if descr not in _DESCR_TO_DTYPE:
        raise ParseError(f"{path}: unsupported dtype descr {descr!r}", offset=10)
    if meta["fortran_order"] is not False:
        raise ParseError(f"{path}: fortran_order must be False", offset=10)
    shape = meta["shape"]
    if not (
        isinstance(shape, tuple)
        and all(isinstance(s, int) and s >= 0 for s in shape)
    ):
        raise ParseError(f"{path}: invalid shape {shape!r}", offset=10)
    dtype = _DESCR_TO_DTYPE[descr]
    expected = int(np.prod(shape, dtype=np.int64)) * dtype.itemsize
    payload = data[10 + hlen :]
    if len(payload) != expected:
        raise ParseError(
            f"{path}: payload is {len(payload)} bytes, expected {expected}",
            offset=10 + hlen,
        )
    return np.frombuffer(payload, dtype=dtype).reshape(shape).copy()


def write_array(imageset, path, precision: int = 64) -> None:
    """Persist an imageset as shape (M, P, P) in 64- or 32-bit floats."""
    if precision not in (32, 64):
        raise ValueError(f"precision must be 32 or 64, got {precision}")
    pixels = imageset.pixels
    if precision == 32:
        pixels = pixels.astype(np.float32)
    write_npy(path, pixels)


def read_array(path):
    """Load an imageset file back; rejects non-3-D or non-square contents."""
    from .transformer import ImageSet

    pixels = read_npy(path)
    if pixels.ndim != 3:
        raise ParseError(f"{path}: imageset must be 3-D, got shape {pixels.shape}")
    if pixels.shape[1] != pixels.shape[2]:
        raise ParseError(f"{path}: images must be square, got shape {pixels.shape}")
    return ImageSet(
        count=pixels.shape[0],
        side=pixels.shape[1],
        pixels=pixels.astype(np.float64),
        provenance=f"file:{Path(path).name}",
    )


def render_preview(imageset, sample_indices: Sequence[int], grid_cols: int, path) -> None:
    """Render selected samples as a grayscale PNG tile grid.

    Tiles are min-max scaled to 0..255 over the whole selection (a zero
    range maps to 0) and separated by a 1-pixel white border, borders on
    the outer edges included.
    """
    indices = [int(i) for i in sample_indices]
    if not indices:
        raise ValueError("sample selection is empty")
    for i in indices:
        if not 0 <= i < imageset.count:
            raise ValueError(f"sample index {i} out of range 0..{imageset.count - 1}")
    if grid_cols < 1:
        raise ValueError("grid_cols must be >= 1")
    tiles = imageset.pixels[indices]
    lo = float(tiles.min())
    hi = float(tiles.max())
    if hi > lo:
        scaled = np.rint((tiles - lo) * (255.0 / (hi - lo))).astype(np.uint8)
    else:
        scaled = np.zeros_like(tiles, dtype=np.uint8)
    p = imageset.side
    rows = -(-len(indices) // grid_cols)
    canvas = np.full((rows * (p + 1) + 1, grid_cols * (p + 1) + 1), 255, dtype=np.uint8)
    for pos, tile in enumerate(scaled):
        r, c = divmod(pos, grid_cols)
        top, left = 1 + r * (p + 1), 1 + c * (p + 1)
        canvas[top : top + p, left : left + p] = tile
    Image.fromarray(canvas, mode="L").save(Path(path), format="PNG")
