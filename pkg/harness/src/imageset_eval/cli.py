"""Harness command line: run bootstrap experiments, generate synthetic data."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigurationError, TrainBudget, mnist_job, mushroom_job
from .report import render_boxplot, write_records_csv, write_report_json


def cmd_run(args) -> int:
    from .runner import run_bootstrap_experiment

    if args.dataset == "mushroom":
        if not args.csv:
            raise ConfigurationError("--dataset mushroom requires --csv")
        job = mushroom_job(args.csv)
    else:
        if not (args.images and args.labels):
            raise ConfigurationError("--dataset mnist requires --images and --labels")
        job = mnist_job(args.images, args.labels)
    budget = TrainBudget(
        epochs=args.epochs,
        batch_size=args.batch,
        n_train=args.train,
        n_val=args.val,
        n_test=args.test,
        patience=args.patience,
        rf_estimators=args.rf_estimators,
    )
    schemes = [s.strip().upper().replace("-", "_") for s in args.schemes.split(",") if s.strip()]
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    report = run_bootstrap_experiment(
        job,
        schemes,
        n_bootstraps=args.bootstraps,
        seed=args.seed,
        budget=budget,
        workdir=outdir / "work",
        include_rf=not args.no_rf,
        keep_artifacts=args.keep_artifacts,
    )
    write_records_csv(list(report.records), outdir / "records.csv")
    write_report_json(report, outdir / "report.json")
    for metric in ("accuracy", "auc"):
        render_boxplot(report, outdir / f"boxplot_{metric}.png", metric=metric)
    print("\n".join(report.summary_lines()))
    return 0


def cmd_synth_mushroom(args) -> int:
    from .synthdata import make_mushroom_csv

    make_mushroom_csv(args.out, n_rows=args.rows, seed=args.seed, label_noise=args.noise)
    print(f"wrote {args.out} ({args.rows} rows)")
    return 0


def cmd_synth_digits(args) -> int:
    from .synthdata import make_digit_idx

    make_digit_idx(args.images, args.labels, count=args.count, seed=args.seed)
    print(f"wrote {args.images} / {args.labels} ({args.count} images)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="imageset-eval",
        description="Bootstrap evaluation of sparse2image transformation schemes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a bootstrap experiment")
    p.add_argument("--dataset", choices=("mushroom", "mnist"), required=True)
    p.add_argument("--csv", help="mushroom-layout CSV path")
    p.add_argument("--images", help="IDX images path (mnist)")
    p.add_argument("--labels", help="IDX labels path (mnist)")
    p.add_argument("--schemes", default="ASIS,RAND,SDIC,SDIC-C",
                   help="comma list drawn from ASIS,RAND,SDIC,SDIC-C")
    p.add_argument("--bootstraps", type=int, default=5)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--epochs", type=int, help="override the dataset's epoch default")
    p.add_argument("--batch", type=int, help="override the batch size default")
    p.add_argument("--train", type=int, help="override the training split size")
    p.add_argument("--val", type=int, help="override the validation split size")
    p.add_argument("--test", type=int, help="override the test split size")
    p.add_argument("--patience", type=int, default=5, help="early stopping patience")
    p.add_argument("--rf-estimators", type=int, default=2000)
    p.add_argument("--no-rf", action="store_true", help="skip the forest baseline")
    p.add_argument("--keep-artifacts", action="store_true",
                   help="keep per-bootstrap imagesets and splits on disk")
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("synth-mushroom", help="generate a mushroom-layout CSV stand-in")
    p.add_argument("--out", required=True)
    p.add_argument("--rows", type=int, default=8124)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--noise", type=float, default=0.04, help="label flip probability")
    p.set_defaults(func=cmd_synth_mushroom)

    p = sub.add_parser("synth-digits", help="generate digit rasters as IDX files")
    p.add_argument("--images", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--count", type=int, default=14000)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_synth_digits)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
