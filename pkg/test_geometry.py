import numpy as np
import pytest

from exceptions import GeometryDomainError, NoIntersectionError
from geometry.models import ImageGrid
from geometry.transforms import (dir_to_uv, normalize_u, pixel_to_uv, plane_point_to_uv,
                                 project_to_horizontal_plane, rotate_xz, uv_to_dir, uv_to_pixel)


class TestImageGrid:

    def test_requires_width_twice_height(self):
        with pytest.raises(GeometryDomainError, match='W = 2H'):
            ImageGrid(1000, 512)

    def test_rejects_empty_grid(self):
        with pytest.raises(GeometryDomainError):
            ImageGrid(0, 0)

    def test_from_width(self):
        assert ImageGrid.from_width(256) == ImageGrid(256, 128)

    def test_diagonal(self, grid):
        assert grid.diagonal == pytest.approx(1144.87, abs=0.01)


class TestPixelUV:

    def test_first_pixel(self, grid):
        u, v = pixel_to_uv(0, 0, grid)
        assert u == pytest.approx(np.pi / 1024 - np.pi)
        assert v == pytest.approx(np.pi / 1024 - np.pi / 2)

    def test_image_center_is_forward_horizon(self, grid):
        u, v = pixel_to_uv(511.5, 255.5, grid)
        assert u == pytest.approx(0.0, abs=1e-12)
        assert v == pytest.approx(0.0, abs=1e-12)

    def test_out_of_range(self, grid):
        with pytest.raises(GeometryDomainError):
            pixel_to_uv(1024, 0, grid)
        with pytest.raises(GeometryDomainError):
            pixel_to_uv(0, -1, grid)

    def test_round_trip(self, grid, rng):
        cols = rng.uniform(0, grid.width, 1000)
        rows = rng.uniform(0, grid.height, 1000)
        back_cols, back_rows = uv_to_pixel(pixel_to_uv(cols, rows, grid), grid)
        dx = np.abs(back_cols - cols)
        np.testing.assert_allclose(np.minimum(dx, grid.width - dx), 0, atol=1e-9)
        np.testing.assert_allclose(back_rows, rows, atol=1e-9)

    def test_column_wraps(self, grid):
        col, _ = uv_to_pixel((-np.pi, 0.0), grid)
        assert col == pytest.approx(1023.5)


class TestDirections:

    def test_axes(self):
        np.testing.assert_allclose(uv_to_dir((0.0, 0.0)), (1, 0, 0), atol=1e-12)
        np.testing.assert_allclose(uv_to_dir((np.pi / 2, 0.0)), (0, 0, 1), atol=1e-12)
        np.testing.assert_allclose(uv_to_dir((0.0, np.pi / 2)), (0, 1, 0), atol=1e-12)

    def test_round_trip(self, rng):
        u = rng.uniform(-np.pi, np.pi, 1000)
        v = rng.uniform(-1.5, 1.5, 1000)
        back = dir_to_uv(uv_to_dir((u, v)))
        np.testing.assert_allclose(back.u, u, atol=1e-12)
        np.testing.assert_allclose(back.v, v, atol=1e-12)

    def test_zero_vector(self):
        with pytest.raises(GeometryDomainError):
            dir_to_uv((0.0, 0.0, 0.0))

    def test_normalize_u(self):
        assert normalize_u(np.pi) == pytest.approx(-np.pi)
        assert normalize_u(3 * np.pi / 2) == pytest.approx(-np.pi / 2)
        values = normalize_u(np.linspace(-10, 10, 101))
        assert np.all((values >= -np.pi) & (values < np.pi))


class TestPlaneProjection:

    def test_forward_floor_point(self):
        x, z = project_to_horizontal_plane((0.0, np.pi / 4), 1.6)
        assert x == pytest.approx(1.6)
        assert z == pytest.approx(0.0, abs=1e-12)

    def test_ray_above_horizon_misses_floor(self):
        with pytest.raises(NoIntersectionError):
            project_to_horizontal_plane((0.0, -0.1), 1.6)

    def test_ray_below_horizon_misses_ceiling(self):
        with pytest.raises(NoIntersectionError):
            project_to_horizontal_plane((0.0, 0.1), -1.4)

    def test_projection_round_trip(self, rng):
        u = rng.uniform(-np.pi, np.pi, 500)
        v = rng.uniform(0.05, 1.5, 500)
        x, z = project_to_horizontal_plane((u, v), 1.6)
        back = dir_to_uv((x, np.full_like(x, 1.6), z))
        np.testing.assert_allclose(back.u, u, atol=1e-9)
        np.testing.assert_allclose(back.v, v, atol=1e-9)
        np.testing.assert_allclose(plane_point_to_uv(x, z, 1.6).v, v, atol=1e-9)

    def test_rotate_xz_increases_longitude(self):
        np.testing.assert_allclose(rotate_xz([[1.0, 0.0]], np.pi / 2), [[0.0, 1.0]], atol=1e-12)
        point = rotate_xz([[2.0, 1.0]], 0.3)[0]
        assert np.arctan2(point[1], point[0]) == pytest.approx(np.arctan2(1.0, 2.0) + 0.3)
