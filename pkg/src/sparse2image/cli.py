"""Command-line pipeline: ingest, split, invert, fit, transform, preview.

Exit codes: 0 success, 1 operational error (bad file contents, shape
mismatches), 2 usage error (bad flags, missing input paths).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .arrayio import read_array, render_preview, write_array
from .dataset import load_dataset_dir, save_dataset_dir
from .errors import ParseError, ShapeMismatchError
from .ingest import SplitSpec, bootstrap_split, invert_features, one_hot_encode, read_categorical_csv, read_idx
from .transformer import (
    FillVariant,
    Scheme,
    apply_transformer,
    deserialize_transformer,
    fit_transformer,
    serialize_transformer,
)

SCHEME_FLAGS = {
    "asis": Scheme.ASIS,
    "rand": Scheme.RAND,
    "sdic": Scheme.SDIC,
    "sdic-c": Scheme.SDIC_C,
}
FILL_FLAGS = {
    "linear": FillVariant.LINEAR,
    "circular": FillVariant.CIRCULAR,
    "raster": FillVariant.RASTER,
}


class UsageError(Exception):
    pass


def _require(path, kind="file"):
    path = Path(path)
    ok = path.is_dir() if kind == "dir" else path.is_file()
    if not ok:
        raise UsageError(f"{kind} not found: {path}")
    return path


def _parse_samples(text: str) -> list[int]:
    """Accept '0..15' (inclusive range) or a comma list like '0,3,9'."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",") if part != ""]


def cmd_ingest(args) -> int:
    if args.format == "idx":
        if not args.images or not args.labels:
            raise UsageError("--format idx requires --images and --labels")
        images = _require(args.images)
        labels = _require(args.labels)
        dataset = read_idx(images, labels)
        provenance = f"ingest:idx:{images.name}"
    else:
        if not args.input:
            raise UsageError("--format csv requires --input")
        source = _require(args.input)
        dataset = one_hot_encode(read_categorical_csv(source))
        provenance = f"ingest:csv:{source.name}"
    save_dataset_dir(dataset, args.out, provenance=provenance)
    print(f"M={dataset.n_samples} N={dataset.n_features} n_classes={dataset.n_classes}")
    return 0


def cmd_fit(args) -> int:
    train = load_dataset_dir(_require(args.train, kind="dir"))
    fill = FILL_FLAGS[args.fill] if args.fill else None
    model = fit_transformer(train, SCHEME_FLAGS[args.scheme], fill_variant=fill, seed=args.seed)
    Path(args.out).write_bytes(serialize_transformer(model))
    print(f"P={model.side} scheme={model.scheme.value} fill={model.fill_variant.value}")
    return 0


def cmd_transform(args) -> int:
    model = deserialize_transformer(_require(args.model).read_bytes())
    data = load_dataset_dir(_require(args.data, kind="dir"))
    images = apply_transformer(model, data)
    write_array(images, args.out, precision=args.precision)
    print(f"shape=({images.count}, {images.side}, {images.side})")
    return 0


def cmd_split(args) -> int:
    data = load_dataset_dir(_require(args.data, kind="dir"))
    spec = SplitSpec(n_train=args.train, n_val=args.val, n_test=args.test, seed=args.seed)
    parts = bootstrap_split(data, spec)
    out = Path(args.out)
    for name, part in zip(("train", "val", "test"), parts):
        save_dataset_dir(part, out / name, provenance=f"split:{name}:seed{args.seed}")
    print(f"train={parts[0].n_samples} val={parts[1].n_samples} test={parts[2].n_samples}")
    return 0


def cmd_invert(args) -> int:
    data = load_dataset_dir(_require(args.data, kind="dir"))
    flipped = invert_features(data, args.count, args.seed)
    save_dataset_dir(flipped, args.out, provenance=f"invert:k{args.count}:seed{args.seed}")
    print(f"inverted={args.count} of N={flipped.n_features}")
    return 0


def cmd_preview(args) -> int:
    images = read_array(_require(args.imageset))
    render_preview(images, _parse_samples(args.samples), args.cols, args.out)
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparse2image",
        description="Convert sparse tabular datasets into structured imagesets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load IDX or categorical CSV data into a dataset directory")
    p.add_argument("--format", choices=("idx", "csv"), required=True)
    p.add_argument("--images", help="IDX images file (idx format)")
    p.add_argument("--labels", help="IDX labels file (idx format)")
    p.add_argument("--input", help="categorical CSV file (csv format)")
    p.add_argument("--out", required=True, help="dataset directory to write")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("fit", help="fit a transformer on a training dataset directory")
    p.add_argument("--scheme", choices=sorted(SCHEME_FLAGS), required=True)
    p.add_argument("--fill", choices=sorted(FILL_FLAGS), help="override the scheme's default fill order")
    p.add_argument("--seed", type=int, help="permutation seed (rand scheme)")
    p.add_argument("--train", required=True, help="training dataset directory")
    p.add_argument("--out", required=True, help="model JSON file to write")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("transform", help="apply a fitted model to a dataset directory")
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--data", required=True, help="dataset directory")
    p.add_argument("--out", required=True, help="imageset .npy file to write")
    p.add_argument("--precision", type=int, choices=(32, 64), default=64)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("split", help="seeded train/val/test split of a dataset directory")
    p.add_argument("--data", required=True, help="dataset directory")
    p.add_argument("--train", type=int, required=True)
    p.add_argument("--val", type=int, required=True)
    p.add_argument("--test", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="directory receiving train/ val/ test/")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("invert", help="flip k seeded-random binary feature columns")
    p.add_argument("--data", required=True, help="dataset directory")
    p.add_argument("--count", type=int, required=True, help="number of columns to invert")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="dataset directory to write")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("preview", help="render selected samples as a PNG tile grid")
    p.add_argument("--imageset", required=True, help="imageset .npy file")
    p.add_argument("--samples", required=True, help="'0..15' or comma list '0,3,9'")
    p.add_argument("--cols", type=int, required=True, help="tiles per row")
    p.add_argument("--out", required=True, help="PNG file to write")
    p.set_defaults(func=cmd_preview)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ShapeMismatchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
