"""Bootstrap experiment loop driving the primary sparse2image CLI.

Per bootstrap: one seeded split (plus, for the mushroom job, one seeded
20-column inversion) is shared by every scheme; each scheme is fitted on
the training part, the three parts are transformed to imagesets, a CNN is
trained per scheme, and the forest baseline runs on the raw features.
"""

from __future__ import annotations

import json
import os
import shutil
import subprocess
from pathlib import Path

import numpy as np

from .cnn import train_and_evaluate
from .config import ConfigurationError, DatasetJob, TrainBudget
from .report import BootstrapRecord, BootstrapReport
from .rf import rf_baseline

__all__ = ["PrimaryCli", "run_bootstrap_experiment", "SCHEME_FLAGS"]

SCHEME_FLAGS = {"ASIS": "asis", "RAND": "rand", "SDIC": "sdic", "SDIC_C": "sdic-c"}
PARTS = ("train", "val", "test")


class PrimaryCli:
    """Thin subprocess wrapper around the sparse2image command."""

    def __init__(self, executable=None):
        executable = executable or os.environ.get("IMAGESET_EVAL_CLI") or shutil.which("sparse2image")
        if executable is None:
            raise ConfigurationError(
                "sparse2image CLI not found on PATH (set IMAGESET_EVAL_CLI to override)"
            )
        self.executable = str(executable)

    def run(self, *args, cwd) -> str:
        cmd = [self.executable] + [str(a) for a in args]
        proc = subprocess.run(cmd, cwd=cwd, capture_output=True, text=True)
        if proc.returncode != 0:
            raise ConfigurationError(
                f"primary CLI failed ({' '.join(cmd)}): {proc.stderr.strip()}"
            )
        return proc.stdout


def _load_labels(part_dir: Path) -> np.ndarray:
    return np.load(part_dir / "labels.npy")


def _load_imageset(path: Path, scale: bool) -> np.ndarray:
    pixels = np.load(path).astype(np.float32)
    if scale:
        pixels /= 255.0
    return pixels


def _ingest(cli: PrimaryCli, job: DatasetJob, workdir: Path) -> Path:
    ds = workdir / "ds"
    if job.ingest_format == "idx":
        cli.run("ingest", "--format", "idx", "--images", job.images_path,
                "--labels", job.labels_path, "--out", ds, cwd=workdir)
    else:
        cli.run("ingest", "--format", "csv", "--input", job.csv_path,
                "--out", ds, cwd=workdir)
    return ds


def run_bootstrap_experiment(
    job: DatasetJob,
    schemes: list[str],
    n_bootstraps: int,
    seed: int,
    budget: TrainBudget = TrainBudget(),
    workdir=None,
    include_rf: bool = True,
    keep_artifacts: bool = False,
    log=print,
) -> BootstrapReport:
    """Evaluate the requested schemes over seeded bootstraps.

    Returns a report of per-bootstrap (scheme, accuracy, auc) records;
    medians and interquartile ranges are recomputable from the records.
    """
    job = job.with_budget(budget)
    for scheme in schemes:
        if scheme not in SCHEME_FLAGS:
            raise ConfigurationError(f"unknown scheme {scheme!r}")
    if n_bootstraps < 1:
        raise ConfigurationError("n_bootstraps must be >= 1")
    cli = PrimaryCli()
    workdir = Path(workdir) if workdir else Path.cwd() / f"{job.name}-eval"
    workdir.mkdir(parents=True, exist_ok=True)

    ds = _ingest(cli, job, workdir)
    meta = json.loads((ds / "meta.json").read_text())
    n_classes = int(meta["n_classes"])

    records: list[BootstrapRecord] = []
    for b in range(n_bootstraps):
        seed_b = seed + b
        bdir = workdir / f"b{b}"
        cli.run("split", "--data", ds, "--train", job.n_train, "--val", job.n_val,
                "--test", job.n_test, "--seed", seed_b, "--out", bdir / "splits",
                cwd=workdir)
        if job.invert_count:
            for part in PARTS:
                cli.run("invert", "--data", bdir / "splits" / part, "--count",
                        job.invert_count, "--seed", seed_b, "--out",
                        bdir / "data" / part, cwd=workdir)
            data_dir = bdir / "data"
        else:
            data_dir = bdir / "splits"
        labels = {part: _load_labels(data_dir / part) for part in PARTS}

        for s_idx, scheme in enumerate(schemes):
            flag = SCHEME_FLAGS[scheme]
            model_path = bdir / f"{flag}.json"
            fit_args = ["fit", "--scheme", flag, "--train", data_dir / "train",
                        "--out", model_path]
            if scheme == "RAND":
                fit_args += ["--seed", seed_b]
            cli.run(*fit_args, cwd=workdir)
            stacks = {}
            for part in PARTS:
                out = bdir / f"{flag}-{part}.npy"
                cli.run("transform", "--model", model_path, "--data",
                        data_dir / part, "--out", out, cwd=workdir)
                stacks[part] = _load_imageset(out, job.scale_pixels)
                if not keep_artifacts:
                    out.unlink()
            metrics = train_and_evaluate(
                job.cnn,
                n_classes,
                (stacks["train"], labels["train"]),
                (stacks["val"], labels["val"]),
                (stacks["test"], labels["test"]),
                seed=seed_b * 100 + s_idx,
                patience=budget.patience,
            )
            records.append(BootstrapRecord(b, scheme, metrics["accuracy"], metrics["auc"]))
            if log:
                log(f"[{job.name}] bootstrap {b} {scheme}: "
                    f"accuracy {metrics['accuracy']:.3f} auc {metrics['auc']:.3f}")

        if include_rf:
            x_train = np.load(data_dir / "train" / "values.npy")
            x_test = np.load(data_dir / "test" / "values.npy")
            metrics = rf_baseline(
                (x_train, labels["train"]),
                (x_test, labels["test"]),
                n_estimators=budget.rf_estimators,
                seed=seed_b,
            )
            records.append(BootstrapRecord(b, "RF", metrics["accuracy"], metrics["auc"]))
            if log:
                log(f"[{job.name}] bootstrap {b} RF: "
                    f"accuracy {metrics['accuracy']:.3f} auc {metrics['auc']:.3f}")

        if not keep_artifacts:
            shutil.rmtree(bdir)
    return BootstrapReport(dataset=job.name, records=tuple(records))
