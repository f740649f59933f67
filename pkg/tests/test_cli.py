import json

import numpy as np
import pytest
from PIL import Image

from sparse2image import load_dataset_dir, read_npy
from sparse2image.cli import build_parser, main

from conftest import synth_digit_images, write_idx_pair, write_mushroom_csv


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def mushroom_ds(tmp_path):
    csv_path = tmp_path / "mushroom.csv"
    write_mushroom_csv(csv_path, n_rows=400, seed=3)
    ds = tmp_path / "ds"
    assert run("ingest", "--format", "csv", "--input", csv_path, "--out", ds) == 0
    return ds


class TestIngest:
    def test_csv(self, tmp_path, capsys):
        csv_path = tmp_path / "mushroom.csv"
        write_mushroom_csv(csv_path, n_rows=200, seed=1)
        assert run("ingest", "--format", "csv", "--input", csv_path, "--out", tmp_path / "ds") == 0
        out = capsys.readouterr().out
        assert "M=200" in out and "N=119" in out and "n_classes=2" in out

    def test_idx(self, tmp_path, capsys):
        images, labels = synth_digit_images(12, seed=0)
        write_idx_pair(images, labels, tmp_path / "im", tmp_path / "lb")
        assert run("ingest", "--format", "idx", "--images", tmp_path / "im",
                   "--labels", tmp_path / "lb", "--out", tmp_path / "ds") == 0
        assert "N=784" in capsys.readouterr().out

    def test_missing_file_exits_2(self, tmp_path):
        assert run("ingest", "--format", "csv", "--input", tmp_path / "nope.csv",
                   "--out", tmp_path / "ds") == 2


class TestFitTransform:
    def test_fit_records_circular_default(self, tmp_path, mushroom_ds, capsys):
        model = tmp_path / "model.json"
        assert run("fit", "--scheme", "sdic-c", "--train", mushroom_ds, "--out", model) == 0
        assert "P=12" in capsys.readouterr().out
        doc = json.loads(model.read_text())
        assert doc["fill_variant"] == "CIRCULAR"

    def test_fit_rand_is_byte_identical(self, tmp_path, mushroom_ds):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run("fit", "--scheme", "rand", "--seed", 7, "--train", mushroom_ds, "--out", a) == 0
        assert run("fit", "--scheme", "rand", "--seed", 7, "--train", mushroom_ds, "--out", b) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_fit_fill_override(self, tmp_path, mushroom_ds):
        model = tmp_path / "model.json"
        assert run("fit", "--scheme", "asis", "--fill", "raster", "--train", mushroom_ds,
                   "--out", model) == 0
        assert json.loads(model.read_text())["fill_variant"] == "RASTER"

    def test_transform_shapes(self, tmp_path, mushroom_ds, capsys):
        model = tmp_path / "model.json"
        run("fit", "--scheme", "sdic-c", "--train", mushroom_ds, "--out", model)
        out = tmp_path / "imgs.npy"
        assert run("transform", "--model", model, "--data", mushroom_ds, "--out", out) == 0
        assert read_npy(out).shape == (400, 12, 12)

    def test_transform_mismatch_exits_1(self, tmp_path, mushroom_ds, capsys):
        model = tmp_path / "model.json"
        run("fit", "--scheme", "asis", "--train", mushroom_ds, "--out", model)
        doc = json.loads(model.read_text())
        doc["n_features"] = 64
        doc["side"] = 8
        doc["ordering"] = list(range(64))
        model.write_text(json.dumps(doc))
        assert run("transform", "--model", model, "--data", mushroom_ds,
                   "--out", tmp_path / "x.npy") == 1
        err = capsys.readouterr().err
        assert "119" in err and "64" in err


class TestSplitInvert:
    def test_split_sizes(self, tmp_path, mushroom_ds):
        out = tmp_path / "splits"
        assert run("split", "--data", mushroom_ds, "--train", 300, "--val", 50,
                   "--test", 50, "--seed", 1, "--out", out) == 0
        assert load_dataset_dir(out / "train").n_samples == 300
        assert load_dataset_dir(out / "val").n_samples == 50
        assert load_dataset_dir(out / "test").n_samples == 50

    def test_split_seed_stable(self, tmp_path, mushroom_ds):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            assert run("split", "--data", mushroom_ds, "--train", 100, "--val", 20,
                       "--test", 20, "--seed", 5, "--out", out) == 0
        assert (a / "train" / "values.npy").read_bytes() == (b / "train" / "values.npy").read_bytes()

    def test_invert_twice_restores(self, tmp_path, mushroom_ds):
        once, twice = tmp_path / "once", tmp_path / "twice"
        assert run("invert", "--data", mushroom_ds, "--count", 20, "--seed", 1, "--out", once) == 0
        assert run("invert", "--data", once, "--count", 20, "--seed", 1, "--out", twice) == 0
        original = load_dataset_dir(mushroom_ds)
        restored = load_dataset_dir(twice)
        assert np.array_equal(original.values, restored.values)


class TestPreview:
    def test_preview_dimensions(self, tmp_path, mushroom_ds):
        model = tmp_path / "model.json"
        run("fit", "--scheme", "sdic-c", "--train", mushroom_ds, "--out", model)
        imgs = tmp_path / "imgs.npy"
        run("transform", "--model", model, "--data", mushroom_ds, "--out", imgs)
        png = tmp_path / "grid.png"
        assert run("preview", "--imageset", imgs, "--samples", "0..15", "--cols", 4,
                   "--out", png) == 0
        with Image.open(png) as img:
            assert img.size == (4 * 13 + 1, 4 * 13 + 1)

    def test_bad_sample_index_exits_1(self, tmp_path, mushroom_ds):
        model = tmp_path / "model.json"
        run("fit", "--scheme", "asis", "--train", mushroom_ds, "--out", model)
        imgs = tmp_path / "imgs.npy"
        run("transform", "--model", model, "--data", mushroom_ds, "--out", imgs)
        assert run("preview", "--imageset", imgs, "--samples", "0..500", "--cols", 4,
                   "--out", tmp_path / "g.png") == 1


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        run("fit", "--scheme", "bogus", "--train", "x", "--out", "y")
    assert exc.value.code == 2


def test_help_lists_expected_flags(capsys):
    parser = build_parser()
    expected = {
        "ingest": ["--format", "--images", "--labels", "--input", "--out"],
        "fit": ["--scheme", "--fill", "--seed", "--train", "--out"],
        "transform": ["--model", "--data", "--out", "--precision"],
        "split": ["--data", "--train", "--val", "--test", "--seed", "--out"],
        "invert": ["--data", "--count", "--seed", "--out"],
        "preview": ["--imageset", "--samples", "--cols", "--out"],
    }
    sub_actions = [a for a in parser._actions if hasattr(a, "choices") and a.choices][0]
    for command, flags in expected.items():
        text = sub_actions.choices[command].format_help()
        for flag in flags:
            assert flag in text, f"{command} help missing {flag}"
