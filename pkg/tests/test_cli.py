import json
import re

import numpy as np
import pytest
from click.testing import CliRunner

from src.main import build_config, cli
from src.models.data_schemas import SnnRestorer
from src.models.raster import ImageRGB
from src.modules.pipeline import get_preset
from src.modules.smoothing import apply_smoother
from src.utils.exceptions import InvalidParameterError
from src.utils.image_io import load_image, save_image, to_bytes


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def input_png(tmp_path, make_rgb):
    return save_image(make_rgb(20, 14), tmp_path / "in.png")


def test_sir_writes_image_and_metadata(runner, input_png, tmp_path):
    out = tmp_path / "out.png"
    result = runner.invoke(cli, ["sir", "-i", str(input_png), "-o", str(out), "--preset", "SiRsep"])
    assert result.exit_code == 0, result.output
    assert re.search(r"smooth=\S+ restore=\S+ total=\S+", result.output)
    assert load_image(out).shape == (14, 20)
    payload = json.loads((tmp_path / "out.metadata.json").read_text(encoding="utf-8"))
    assert payload["config"]["restorer"]["kind"] == "separable"
    assert len(payload["iteration_max_change"]) == 5


def test_sir_zero_iterations_writes_smoothed_input(runner, input_png, tmp_path):
    out = tmp_path / "blur.png"
    result = runner.invoke(cli, ["sir", "-i", str(input_png), "-o", str(out), "--preset", "SiRSNN", "--iters", "0", "--no-metadata-json"])
    assert result.exit_code == 0, result.output
    smoother = get_preset("SiRSNN").config.smoother
    expected = load_image(input_png).map_channels(lambda plane: apply_smoother(plane, smoother))
    assert np.array_equal(load_image(out).to_array(), to_bytes(expected.to_array()).astype(float))
    assert not (tmp_path / "blur.metadata.json").exists()


def test_sir_custom_filters(runner, input_png, tmp_path):
    out = tmp_path / "custom.ppm"
    args = ["sir", "-i", str(input_png), "-o", str(out), "--smoother", "box", "--restorer", "snn-median", "--iters", "2"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    assert out.read_bytes()[:2] == b"P6"


def test_sir_guide_size_mismatch_fails(runner, input_png, tmp_path, make_rgb):
    guide = save_image(make_rgb(20, 15), tmp_path / "guide.png")
    out = tmp_path / "out.png"
    result = runner.invoke(cli, ["sir", "-i", str(input_png), "-o", str(out), "--guide", str(guide)])
    assert result.exit_code != 0
    assert "guide" in result.output
    assert not out.exists()


def test_sir_missing_input_fails(runner, tmp_path):
    result = runner.invoke(cli, ["sir", "-i", str(tmp_path / "none.png"), "-o", str(tmp_path / "o.png")])
    assert result.exit_code != 0
    assert "not found" in result.output


def test_preset_and_restorer_are_exclusive():
    with pytest.raises(InvalidParameterError):
        build_config(preset="SiRsep", restorer="snn")


def test_build_config_custom_defaults():
    config = build_config(restorer="snn", external_guide=True)
    assert config.smoother.kind == "gaussian"
    assert config.restorer == SnnRestorer(mode="mean")
    assert config.iterations == 5
    assert config.guidance == "external"


def test_presets_json(runner):
    result = runner.invoke(cli, ["presets", "--json"])
    assert result.exit_code == 0
    names = [p["name"] for p in json.loads(result.output)]
    assert names[:3] == ["SiRSNN", "SiR2DGauss", "SiRsep"]
    assert len(names) == 6


def test_bench_command(runner, input_png, tmp_path):
    csv_path = tmp_path / "bench.csv"
    result = runner.invoke(cli, ["bench", "-i", str(input_png), "--repeat", "1", "--csv", str(csv_path)])
    assert result.exit_code == 0, result.output
    assert "SiR2DGauss" in result.output
    assert csv_path.read_text(encoding="utf-8").splitlines()[0] == "variant,width,height,iters,smooth_s,restore_s,total_s"


def test_make_corpus_then_edges(runner, tmp_path):
    corpus = tmp_path / "corpus"
    made = runner.invoke(cli, ["make-corpus", "--outdir", str(corpus), "--count", "2", "--size", "40"])
    assert made.exit_code == 0, made.output
    csv_path = tmp_path / "edges.csv"
    result = runner.invoke(
        cli,
        ["edges", "--manifest", str(corpus / "manifest.tsv"), "--setting", "sir", "--restorer", "snn", "--steps", "8", "--csv", str(csv_path)],
    )
    assert result.exit_code == 0, result.output
    assert "mean F=" in result.output
    rows = csv_path.read_text(encoding="utf-8").splitlines()
    assert rows[0] == "image,precision,recall,f_measure,best_threshold"
    assert [row.split(",")[0] for row in rows[1:]] == ["scene_00.png", "scene_01.png", "MEAN"]


def test_edges_missing_manifest(runner, tmp_path):
    result = runner.invoke(cli, ["edges", "--manifest", str(tmp_path / "nope.tsv")])
    assert result.exit_code != 0
