import numpy as np
import pytest
from PIL import Image

from src.models.raster import BoundaryMap, ImagePlane, ImageRGB
from src.utils.exceptions import ImageIOError
from src.utils.image_io import load_boundary, load_image, save_boundary, save_image, to_bytes


def test_single_red_pixel_png(tmp_path):
    path = tmp_path / "red.png"
    Image.new("RGB", (1, 1), (255, 0, 0)).save(path)
    image = load_image(path)
    assert image.shape == (1, 1)
    assert image.r.data[0, 0] == 255.0
    assert image.g.data[0, 0] == 0.0
    assert image.b.data[0, 0] == 0.0


def test_gray_ppm_roundtrip(tmp_path):
    path = tmp_path / "gray.ppm"
    save_image(ImageRGB.from_gray(ImagePlane.constant(2, 2, 128.0)), path)
    assert path.read_bytes()[:2] == b"P6"
    image = load_image(path)
    assert image.shape == (2, 2)
    for plane in image:
        assert np.all(plane.data == 128.0)


def test_gray_png_replicated_to_three_planes(tmp_path):
    path = tmp_path / "gray.png"
    Image.fromarray(np.array([[10, 20], [30, 40]], dtype=np.uint8)).save(path)
    image = load_image(path)
    assert image.r == image.g == image.b
    assert image.r.data[1, 1] == 40.0


def test_png_roundtrip_preserves_bytes(tmp_path, rng):
    pixels = rng.integers(0, 256, size=(5, 7, 3)).astype(np.float64)
    path = save_image(ImageRGB.from_array(pixels), tmp_path / "rand.png")
    assert np.array_equal(load_image(path).to_array(), pixels)


def test_to_bytes_rounds_half_up_and_clamps():
    out = to_bytes(np.array([127.5, 260.0, -3.0, 0.49]))
    assert out.tolist() == [128, 255, 0, 0]


def test_save_rounds_out_of_range_values(tmp_path):
    plane = ImagePlane(np.array([[127.5, 260.0, -3.0]]))
    path = save_image(ImageRGB.from_gray(plane), tmp_path / "clip.png")
    stored = np.asarray(Image.open(path))
    assert stored[0, :, 0].tolist() == [128, 255, 0]


def test_missing_file():
    with pytest.raises(ImageIOError):
        load_image("/nonexistent/nothing.png")


def test_unsupported_format(tmp_path):
    path = tmp_path / "pic.bmp"
    Image.new("RGB", (2, 2)).save(path)
    with pytest.raises(ImageIOError):
        load_image(path)


def test_ascii_ppm_rejected(tmp_path):
    path = tmp_path / "plain.ppm"
    path.write_text("P3\n1 1\n255\n1 2 3\n")
    with pytest.raises(ImageIOError):
        load_image(path)


def test_garbage_file_rejected(tmp_path):
    path = tmp_path / "junk.png"
    path.write_bytes(b"not an image")
    with pytest.raises(ImageIOError):
        load_image(path)


def test_unknown_output_extension(tmp_path):
    with pytest.raises(ImageIOError):
        save_image(ImageRGB.from_gray(ImagePlane.constant(1, 1, 0.0)), tmp_path / "out.jpg")


def test_unwritable_destination(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(ImageIOError):
        save_image(ImageRGB.from_gray(ImagePlane.constant(1, 1, 0.0)), blocker / "out.png")


def test_boundary_roundtrip(tmp_path):
    edge = np.zeros((4, 5), dtype=bool)
    edge[1, 2] = edge[3, 0] = True
    path = save_boundary(BoundaryMap(edge), tmp_path / "gt.png")
    assert load_boundary(path) == BoundaryMap(edge)
