import numpy as np
import pytest

from src.config import CorpusOptions
from src.models.raster import BoundaryMap, GradientMap, ImagePlane, ImageRGB
from src.modules.edgebench import (
    BoundaryMatcher,
    CorpusItem,
    default_thresholds,
    evaluate_corpus,
    f_measure,
    load_manifest,
    preprocess_for,
    sobel,
    sweep_best_f,
    threshold_boundary,
    to_gray,
)
from src.utils.exceptions import CorpusError, DimensionMismatchError, InvalidParameterError
from src.utils.synthetic import label_boundaries, step_edge_image, textured_scene, write_corpus


def _single(width, height, *pixels):
    edge = np.zeros((height, width), dtype=bool)
    for x, y in pixels:
        edge[y, x] = True
    return BoundaryMap(edge)


def _step_item(name="step", width=16, height=16):
    plane = step_edge_image(width, height)
    labels = (plane.data > 0).astype(int)
    return CorpusItem(name=name, image=ImageRGB.from_gray(plane), ground_truth=BoundaryMap(label_boundaries(labels)))


def test_sobel_constant_is_zero():
    assert sobel(ImagePlane.constant(6, 5, 90.0)).max == 0.0


def test_sobel_vertical_step():
    magnitude = sobel(step_edge_image(16, 16)).magnitude
    assert np.all(magnitude[:, 7:9] == 1020.0)
    assert np.all(magnitude[:, :7] == 0.0)
    assert np.all(magnitude[:, 9:] == 0.0)


def test_sobel_transposes_with_image(make_plane):
    plane = make_plane(13, 9)
    assert np.allclose(sobel(plane.transpose()).magnitude, sobel(plane).magnitude.T, atol=1e-9)


def test_threshold_boundary():
    grad = sobel(step_edge_image(16, 16))
    assert threshold_boundary(grad, 0.0).count == 256
    assert threshold_boundary(grad, 500.0).count == 32
    assert threshold_boundary(grad, 2000.0).count == 0
    with pytest.raises(InvalidParameterError):
        threshold_boundary(grad, -1.0)


def test_default_thresholds():
    grad = GradientMap(np.array([[0.0, 8.0]]))
    assert default_thresholds(grad, 4) == [2.0, 4.0, 6.0, 8.0]
    assert default_thresholds(GradientMap(np.zeros((2, 2))), 4) == [1.0]


def test_identical_maps_score_one():
    gt = _single(6, 6, (1, 1), (2, 3), (5, 5))
    result = f_measure(gt, gt, tolerance=2.0)
    assert (result.precision, result.recall, result.f_measure) == (1.0, 1.0, 1.0)


def test_empty_prediction_scores_zero():
    result = f_measure(_single(5, 5), _single(5, 5, (2, 2)))
    assert (result.precision, result.recall, result.f_measure) == (0.0, 0.0, 0.0)


def test_tolerance_decides_near_miss():
    pred = _single(5, 5, (2, 3))
    gt = _single(5, 5, (2, 2))
    assert f_measure(pred, gt, tolerance=2.0).f_measure == 1.0
    assert f_measure(pred, gt, tolerance=0.0).f_measure == 0.0


def test_matching_is_one_to_one():
    result = f_measure(_single(5, 5, (1, 2), (3, 2)), _single(5, 5, (2, 2)), tolerance=1.0)
    assert result.precision == 0.5
    assert result.recall == 1.0


def test_wider_tolerance_reaches_shifted_line():
    gt = _single(10, 10, *[(5, y) for y in range(10)])
    pred = _single(10, 10, *[(6, y) for y in range(10)])
    scores = [f_measure(pred, gt, tolerance=t).f_measure for t in (0.0, 1.0, 2.0)]
    assert scores == [0.0, 1.0, 1.0]


def test_matcher_rejects_bad_input():
    with pytest.raises(InvalidParameterError):
        BoundaryMatcher(_single(3, 3), tolerance=-1.0)
    with pytest.raises(DimensionMismatchError):
        BoundaryMatcher(_single(3, 3)).true_positives(_single(4, 3))


def test_sweep_is_best_over_thresholds(make_plane, rng):
    grad = sobel(make_plane(16, 16))
    gt = BoundaryMap(rng.random((16, 16)) < 0.15)
    thresholds = default_thresholds(grad, 16)
    best = sweep_best_f(grad, gt, 2.0, thresholds)
    for t in thresholds:
        assert best.f_measure >= f_measure(threshold_boundary(grad, t), gt, 2.0).f_measure
    single = sweep_best_f(grad, gt, 2.0, [thresholds[3]])
    assert single == f_measure(threshold_boundary(grad, thresholds[3]), gt, 2.0).model_copy(
        update={"best_threshold": thresholds[3]}
    )


def test_sweep_ties_keep_lowest_threshold():
    grad = sobel(step_edge_image(16, 16))
    gt = threshold_boundary(grad, 500.0)
    best = sweep_best_f(grad, gt, 0.0, [1000.0, 100.0, 500.0])
    assert best.f_measure == 1.0
    assert best.best_threshold == 100.0


def test_sweep_rejects_bad_input():
    grad = sobel(step_edge_image(8, 8))
    with pytest.raises(InvalidParameterError):
        sweep_best_f(grad, _single(8, 8), 2.0, [])
    with pytest.raises(DimensionMismatchError):
        sweep_best_f(grad, _single(8, 9), 2.0, [1.0])


def test_to_gray_is_channel_mean():
    image = ImageRGB.from_array(np.dstack([np.full((2, 2), v) for v in (30.0, 60.0, 90.0)]))
    assert np.all(to_gray(image).data == 60.0)


def test_step_corpus_scores_perfectly():
    report = evaluate_corpus([_step_item("a"), _step_item("b", 20, 12)], preprocess=None, threshold_steps=8)
    assert report.mean_f_measure == 1.0
    assert report.setting == "none"
    assert report.warnings == []


def test_bad_item_becomes_warning():
    good = _step_item("good")
    bad = CorpusItem(name="bad", image=good.image, ground_truth=_single(15, 16))
    report = evaluate_corpus([good, bad], threshold_steps=8)
    assert [r.name for r in report.records] == ["good"]
    assert len(report.warnings) == 1 and report.warnings[0].startswith("bad:")


def test_corpus_errors():
    with pytest.raises(CorpusError):
        evaluate_corpus([])
    good = _step_item()
    with pytest.raises(CorpusError):
        evaluate_corpus([CorpusItem(name="bad", image=good.image, ground_truth=_single(3, 3))])


def test_preprocess_settings():
    assert preprocess_for("none") is None
    assert preprocess_for("filter-only", "gauss2d").kind == "gauss2d"
    assert preprocess_for("sir", "snn").restorer.kind == "snn"
    assert preprocess_for("sir", "separable").restorer.range_spec.sigma == 8.0
    with pytest.raises(InvalidParameterError):
        preprocess_for("denoise")


def test_manifest_roundtrip(tmp_path):
    manifest = write_corpus(tmp_path / "corpus", CorpusOptions(count=2, size=40, seed=3))
    with manifest.open("a", encoding="utf-8") as handle:
        handle.write("# comment\n\nmissing.png\tmissing.gt.png\nno-tab-here\n")
    entries, warnings = load_manifest(manifest)
    assert [e.name for e in entries] == ["scene_00.png", "scene_01.png", "missing.png"]
    assert len(warnings) == 1

    item = entries[0].load()
    image, boundary = textured_scene(3, size=40)
    assert item.image == image
    assert item.ground_truth == boundary

    report = evaluate_corpus(entries, threshold_steps=8, warnings=warnings)
    assert len(report.records) == 2
    assert len(report.warnings) == 2


def test_missing_manifest(tmp_path):
    with pytest.raises(CorpusError):
        load_manifest(tmp_path / "nope.tsv")


def test_sir_beats_plain_detection_on_textured_scenes():
    items = []
    for seed in range(10):
        image, boundary = textured_scene(seed, size=64)
        items.append(CorpusItem(name=f"scene_{seed}", image=image, ground_truth=boundary))
    scores = {
        setting: evaluate_corpus(items, preprocess_for(setting, "sep"), threshold_steps=32).mean_f_measure
        for setting in ("none", "filter-only", "sir")
    }
    assert scores["sir"] >= scores["none"] + 0.03
    assert scores["sir"] > scores["filter-only"]
