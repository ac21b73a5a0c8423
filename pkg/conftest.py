import numpy as np
import pytest

from geometry.models import ImageGrid
from layout.models import ManhattanLayout


@pytest.fixture
def grid():
    return ImageGrid(1024, 512)


@pytest.fixture
def small_grid():
    return ImageGrid(256, 128)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def square_room():
    """4 m x 4 m room centred on the camera, 3.2 m high"""
    return ManhattanLayout([[-2, -2], [2, -2], [2, 2], [-2, 2]], camera_height=1.6, ceiling_height=3.2)


@pytest.fixture
def offset_cuboid():
    return ManhattanLayout([[-1.3, -2.1], [2.7, -2.1], [2.7, 1.6], [-1.3, 1.6]],
                           camera_height=1.6, ceiling_height=2.9)


@pytest.fixture
def occluded_l_room():
    """L-shaped room whose vertex (-1, 3.5) is hidden behind the wall z = 1.5"""
    return ManhattanLayout([[-3, -0.5], [1, -0.5], [1, 1.5], [-1, 1.5], [-1, 3.5], [-3, 3.5]],
                           camera_height=1.6, ceiling_height=3.0)


@pytest.fixture
def notched_room():
    """Rectangle [-3, 3] x [-2, 2] with two opposite corners notched (8 corners, all visible)"""
    return ManhattanLayout([[3, -2], [3, 1.2], [2, 1.2], [2, 2], [-3, 2], [-3, -1.2], [-2, -1.2], [-2, -2]],
                           camera_height=1.6, ceiling_height=3.1)


def pytest_addoption(parser):
    parser.addoption('--update-goldens', action='store_true',
                     help='rewrite the golden images under golden/ instead of comparing against them')


@pytest.fixture
def update_goldens(request):
    return request.config.getoption('--update-goldens')
