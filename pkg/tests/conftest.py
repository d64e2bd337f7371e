import numpy as np
import pytest

from src.models.raster import ImagePlane, ImageRGB


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def make_plane(rng):
    def _make(width: int = 16, height: int = 16, low: float = 0.0, high: float = 255.0) -> ImagePlane:
        return ImagePlane(rng.uniform(low, high, size=(height, width)))

    return _make


@pytest.fixture
def make_rgb(make_plane):
    def _make(width: int = 16, height: int = 16) -> ImageRGB:
        return ImageRGB(make_plane(width, height), make_plane(width, height), make_plane(width, height))

    return _make
