import json

from src.models.data_schemas import CorpusReport, EvalResult, ImageEvalRecord
from src.models.raster import ImagePlane, ImageRGB
from src.modules.output_generator import metadata_path_for, write_edges_csv, write_outputs


def test_metadata_path_for(tmp_path):
    assert metadata_path_for(tmp_path / "out.sir.png") == tmp_path / "out.sir.metadata.json"


def test_write_outputs_with_metadata(tmp_path):
    image = ImageRGB.from_gray(ImagePlane.constant(4, 3, 10.0))
    image_path, json_path = write_outputs(image, tmp_path / "res" / "out.png", {"preset": "SiRsep"})
    assert image_path.is_file()
    payload = json.loads(json_path.read_text(encoding="utf-8"))
    assert payload["preset"] == "SiRsep"
    assert (payload["width"], payload["height"]) == (4, 3)
    assert payload["run_timestamp"].endswith("Z")


def test_write_outputs_without_metadata(tmp_path):
    image = ImageRGB.from_gray(ImagePlane.constant(2, 2, 0.0))
    _, json_path = write_outputs(image, tmp_path / "out.ppm", {}, write_metadata_json=False)
    assert json_path is None
    assert not metadata_path_for(tmp_path / "out.ppm").exists()


def test_edges_csv_has_mean_row(tmp_path):
    record = ImageEvalRecord(name="a.png", width=4, height=4, result=EvalResult.from_scores(0.5, 1.0, 12.0))
    report = CorpusReport(
        setting="none",
        tolerance=2.0,
        records=[record],
        mean_precision=0.5,
        mean_recall=1.0,
        mean_f_measure=record.result.f_measure,
    )
    lines = write_edges_csv(report, tmp_path / "edges.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "image,precision,recall,f_measure,best_threshold"
    assert lines[1] == "a.png,0.500000,1.000000,0.666667,12.0000"
    assert lines[2].startswith("MEAN,0.500000,1.000000,0.666667")
