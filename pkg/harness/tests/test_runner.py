import struct
import subprocess

import numpy as np
import pytest

from imageset_eval import ConfigurationError, TrainBudget, mushroom_job
from imageset_eval.runner import PrimaryCli, run_bootstrap_experiment
from imageset_eval.synthdata import make_digit_idx, make_mushroom_csv


@pytest.fixture(scope="module")
def small_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "mushroom.csv"
    make_mushroom_csv(path, n_rows=800, seed=3)
    return path


def test_primary_cli_resolves():
    cli = PrimaryCli()
    assert "sparse2image" in cli.executable


def test_primary_cli_missing_is_configuration_error(monkeypatch):
    monkeypatch.setenv("PATH", "")
    monkeypatch.delenv("IMAGESET_EVAL_CLI", raising=False)
    with pytest.raises(ConfigurationError, match="not found"):
        PrimaryCli()


def test_unknown_scheme_rejected(small_csv, tmp_path):
    with pytest.raises(ConfigurationError, match="unknown scheme"):
        run_bootstrap_experiment(
            mushroom_job(small_csv), ["BOGUS"], 1, seed=0, workdir=tmp_path
        )


def test_synth_mushroom_ingests_to_119_columns(small_csv, tmp_path):
    cli = PrimaryCli()
    out = cli.run("ingest", "--format", "csv", "--input", small_csv,
                  "--out", tmp_path / "ds", cwd=tmp_path)
    assert "N=119" in out
    assert "M=800" in out


def test_synth_digits_idx_headers(tmp_path):
    make_digit_idx(tmp_path / "im", tmp_path / "lb", count=40, seed=2)
    header = (tmp_path / "im").read_bytes()[:16]
    magic, count, rows, cols = struct.unpack(">IIII", header)
    assert (magic, count, rows, cols) == (0x803, 40, 28, 28)
    labels = np.frombuffer((tmp_path / "lb").read_bytes()[8:], dtype=np.uint8)
    assert labels.shape == (40,)
    assert set(labels.tolist()) <= set(range(10))


@pytest.fixture(scope="module")
def tiny_report(small_csv, tmp_path_factory):
    workdir = tmp_path_factory.mktemp("work")
    budget = TrainBudget(epochs=2, batch_size=64, n_train=500, n_val=100,
                         n_test=100, rf_estimators=20)
    report = run_bootstrap_experiment(
        mushroom_job(small_csv),
        ["ASIS", "RAND", "SDIC", "SDIC_C"],
        n_bootstraps=2,
        seed=5,
        budget=budget,
        workdir=workdir,
        keep_artifacts=True,
        log=None,
    )
    return report, workdir


def test_report_rows_cover_schemes_and_rf(tiny_report):
    report, _ = tiny_report
    assert report.dataset == "mushroom"
    assert len(report.records) == 2 * 5  # 2 bootstraps x (4 schemes + RF)
    for b in (0, 1):
        schemes = [r.scheme for r in report.records if r.bootstrap == b]
        assert schemes == ["ASIS", "RAND", "SDIC", "SDIC_C", "RF"]
    for record in report.records:
        assert 0.0 <= record.accuracy <= 1.0
        assert 0.0 <= record.auc <= 1.0


def test_aggregates_recompute_from_records(tiny_report):
    report, _ = tiny_report
    for scheme in ("ASIS", "SDIC", "SDIC_C", "RF"):
        accs = sorted(r.accuracy for r in report.records if r.scheme == scheme)
        assert report.median(scheme) == float(np.median(accs))


def test_schemes_share_split_and_inversion(tiny_report):
    _, workdir = tiny_report
    asis = np.load(workdir / "b0" / "asis-test.npy")
    sdic_c = np.load(workdir / "b0" / "sdic-c-test.npy")
    # same underlying rows: per-sample pixel sums are scheme-independent
    assert np.allclose(asis.sum(axis=(1, 2)), sdic_c.sum(axis=(1, 2)))


def test_inversion_touches_exactly_k_columns(tiny_report):
    _, workdir = tiny_report
    raw = np.load(workdir / "b0" / "splits" / "train" / "values.npy")
    hardened = np.load(workdir / "b0" / "data" / "train" / "values.npy")
    changed = (raw != hardened).any(axis=0)
    assert int(changed.sum()) == 20


def test_cli_run_smoke(small_csv, tmp_path):
    cmd = [
        "imageset-eval", "run", "--dataset", "mushroom", "--csv", str(small_csv),
        "--schemes", "ASIS", "--bootstraps", "1", "--seed", "2",
        "--epochs", "1", "--train", "300", "--val", "60", "--test", "60",
        "--rf-estimators", "10", "--outdir", str(tmp_path / "out"),
    ]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "out" / "records.csv").is_file()
    assert (tmp_path / "out" / "report.json").is_file()
    assert (tmp_path / "out" / "boxplot_auc.png").is_file()
    assert "ASIS" in proc.stdout and "RF" in proc.stdout
