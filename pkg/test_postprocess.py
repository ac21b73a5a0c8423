import time

import numpy as np
import pytest

from exceptions import ReconstructionError, SignalValidationError
from geometry.models import ImageGrid
from geometry.transforms import rotate_xz
from layout.encoding import (corner_columns, corner_encoding, render_signals,
                             visible_vertex_columns)
from layout.models import BoundarySignals, ManhattanLayout
from metrics.evaluation import corner_error, iou_3d
from postprocess.models import Z_WALL, PeakList
from postprocess.peaks import detect_peaks, window_radius
from postprocess.pipeline import reconstruct, reconstruct_detailed
from postprocess.planes import (estimate_rotation, fold_angle, project_ceiling_boundary, recover_heights,
                                split_segments)
from postprocess.walls import build_walls, vote, wall_corners
from stretch.augment import rotate_layout, rotate_signals
from synthetic.generator import generate_noisy_signals, generate_room
from synthetic.models import RoomSpec


def brute_force_peaks(y_w, radius, threshold):
    width = len(y_w)
    peaks = []
    for i in range(width):
        if y_w[i] <= threshold:
            continue
        if all(y_w[i] >= y_w[(i + d) % width] and y_w[i] > y_w[(i - d) % width]
               for d in range(1, radius + 1) if d % width):
            peaks.append(i)
    return peaks


def with_yaw(layout, yaw):
    return ManhattanLayout(layout.floor_polygon, camera_height=layout.camera_height,
                           ceiling_height=layout.ceiling_height, yaw=yaw)


class TestPeaks:

    def test_window_radius(self):
        assert window_radius(1024, 5.0) == 14
        assert window_radius(256, 5.0) == 4

    def test_separated_corners(self):
        y_w = corner_encoding([100, 400, 700, 900], 1024)
        np.testing.assert_array_equal(detect_peaks(y_w).columns, [100, 400, 700, 900])

    def test_threshold(self):
        y_w = np.zeros(64)
        y_w[10] = 0.04
        y_w[40] = 0.5
        np.testing.assert_array_equal(detect_peaks(y_w).columns, [40])

    def test_plateau_keeps_lowest_column(self):
        y_w = np.zeros(64)
        y_w[20:24] = 0.7
        assert detect_peaks(y_w, window_deg=16.875).columns.tolist() == [20]

    def test_plateau_across_seam(self):
        y_w = np.zeros(64)
        y_w[[62, 63, 0, 1]] = 0.7
        assert detect_peaks(y_w, window_deg=16.875).columns.tolist() == [62]

    @pytest.mark.parametrize('width', [8, 16, 33, 64])
    def test_matches_brute_force(self, width, rng):
        for _ in range(50):
            y_w = rng.integers(0, 5, width) / 4.0
            window = float(rng.uniform(5, 120))
            radius = window_radius(width, window)
            expected = brute_force_peaks(y_w, radius, 0.05)
            assert detect_peaks(y_w, window, 0.05).columns.tolist() == expected

    def test_top(self):
        peaks = PeakList([1, 5, 9, 12], [0.5, 0.9, 0.5, 0.7])
        assert peaks.top(2, 16).columns.tolist() == [5, 12]
        assert peaks.top(3, 16).columns.tolist() == [1, 5, 12]

    def test_top_spreads_ties(self):
        peaks = PeakList([66, 103, 190, 329, 360, 421, 643, 863], np.ones(8))
        assert peaks.top(4, 1024).columns.tolist() == [66, 360, 643, 863]

    def test_top_tolerance(self):
        peaks = PeakList([0, 2, 8, 10], [1.0, 1.0, 0.98, 0.5])
        assert peaks.top(2, 16).columns.tolist() == [0, 2]
        assert peaks.top(2, 16, tolerance=0.05).columns.tolist() == [0, 8]


class TestPlanes:

    def test_recover_heights(self, square_room, grid):
        floor_y, ceiling_y = recover_heights(render_signals(square_room, grid))
        assert floor_y == pytest.approx(1.6)
        assert ceiling_y == pytest.approx(-1.6, abs=1e-9)

    def test_recover_heights_scales_with_camera(self, square_room, grid):
        _, ceiling_y = recover_heights(render_signals(square_room, grid), camera_height=3.2)
        assert ceiling_y == pytest.approx(-3.2, abs=1e-9)

    def test_floor_above_horizon(self):
        sig = BoundarySignals([-0.5] * 4, [-0.1] * 4, [0.0] * 4)
        with pytest.raises(SignalValidationError):
            recover_heights(sig)

    def test_ceiling_below_horizon(self):
        sig = BoundarySignals([0.1] * 4, [0.5] * 4, [0.0] * 4)
        with pytest.raises(SignalValidationError):
            recover_heights(sig)

    def test_fold_angle(self):
        assert fold_angle(0.1) == pytest.approx(0.1)
        assert fold_angle(np.pi / 2 + 0.1) == pytest.approx(0.1)
        assert fold_angle(-np.pi / 2 - 0.1) == pytest.approx(-0.1)
        assert fold_angle(np.pi / 4) == pytest.approx(-np.pi / 4)

    def test_segments_cover_every_column(self):
        points = np.random.default_rng(1).normal(size=(64, 2))
        segments = split_segments(PeakList([5, 20, 40, 60], [1, 1, 1, 1]), points)
        covered = np.sort(np.concatenate([segment.columns for segment in segments]))
        np.testing.assert_array_equal(covered, np.arange(64))
        assert segments[-1].columns.tolist() == [60, 61, 62, 63, 0, 1, 2, 3, 4]

    @pytest.mark.parametrize('degrees', [3.0, -7.5, 20.0])
    def test_rotation_estimate(self, offset_cuboid, grid, degrees):
        layout = with_yaw(offset_cuboid, np.radians(degrees))
        rotation = reconstruct_detailed(render_signals(layout, grid)).rotation
        assert np.degrees(rotation) == pytest.approx(degrees, abs=0.2)

    def test_quarter_turn_is_no_rotation(self, offset_cuboid, grid):
        result = reconstruct_detailed(render_signals(with_yaw(offset_cuboid, np.pi / 2), grid))
        assert abs(np.degrees(result.rotation)) < 0.2

    def test_degenerate_segments_assume_no_rotation(self):
        points = np.zeros((16, 2))
        segments = split_segments(PeakList([0, 4, 8, 12], [1, 1, 1, 1]), points)
        assert estimate_rotation(segments) == 0.0


class TestVote:

    def test_majority_wins(self):
        offset, count = vote([1.0] * 10 + [2.0] * 3)
        assert offset == pytest.approx(1.0)
        assert count == 10

    def test_tie_goes_to_median(self):
        offset, count = vote([0.0, 0.1])
        assert offset == pytest.approx(0.05)
        assert count == 2

    def test_outliers_ignored(self):
        values = np.concatenate([np.full(20, 2.5), [0.3, 4.0, 7.1]])
        assert vote(values)[0] == pytest.approx(2.5)

    def test_empty(self):
        with pytest.raises(ReconstructionError):
            vote([])


class TestBuildWalls:

    def test_single_neighbor_keeps_parallel_wall(self, occluded_l_room, grid):
        sig = render_signals(occluded_l_room, grid)
        result = reconstruct_detailed(sig)
        points = rotate_xz(project_ceiling_boundary(sig, result.ceiling_y), -result.rotation)
        segments = split_segments(result.peaks, points, u_offset=result.rotation)
        assert len(segments) == 5
        # z = 1.5 first, then the short z = 3.5 segment beyond it with only that wall built
        for index, segment in enumerate(segments):
            segment.variance = 1.0 + index
        segments[2].variance = 0.0
        segments[3].variance = 1e-6

        walls = build_walls(segments)
        assert [wall.source for wall in walls].count('junction') == 1
        assert walls[4].normal == Z_WALL
        assert walls[4].offset == pytest.approx(3.5, abs=0.02)
        layout = ManhattanLayout.from_vertices(wall_corners(walls), camera_height=result.floor_y,
                                               ceiling_height=result.floor_y - result.ceiling_y,
                                               yaw=result.rotation)
        assert layout.same_as(occluded_l_room, atol=0.02)


class TestReconstruct:

    def test_square_room(self, square_room, grid):
        pred = reconstruct(render_signals(square_room, grid))
        assert pred.same_as(square_room, atol=1e-6)

    def test_cuboids(self, grid):
        rng = np.random.default_rng(100)
        for _ in range(200):
            gt = generate_room(RoomSpec(corner_count=4), rng)
            pred = reconstruct(render_signals(gt, grid))
            assert iou_3d(pred, gt) >= 0.99
            assert corner_error(pred, gt, grid) <= 0.005

    def test_general_rooms(self, grid):
        rng = np.random.default_rng(200)
        scores = []
        for index in range(200):
            gt = generate_room(RoomSpec(corner_count=(6, 8, 10)[index % 3]), rng)
            scores.append(iou_3d(reconstruct(render_signals(gt, grid)), gt))
        assert np.mean(np.array(scores) >= 0.98) >= 0.99

    def test_noisy_cuboids(self, grid):
        rng = np.random.default_rng(300)
        scores = []
        for _ in range(200):
            gt = generate_room(RoomSpec(corner_count=4), rng)
            sig = generate_noisy_signals(gt, grid, 0.005, rng)
            scores.append(iou_3d(reconstruct(sig, mode='cuboid'), gt))
        assert np.mean(np.array(scores) >= 0.95) >= 0.95

    def test_rotated_rooms(self, grid):
        rng = np.random.default_rng(400)
        for _ in range(30):
            yaw = np.radians(rng.uniform(1, 8))
            gt = with_yaw(generate_room(RoomSpec(corner_count=6), rng), yaw)
            result = reconstruct_detailed(render_signals(gt, grid))
            assert np.degrees(abs(result.rotation - yaw)) <= 0.2
            assert iou_3d(result.layout, gt) >= 0.97

    def test_occluded_corner(self, occluded_l_room, grid):
        result = reconstruct_detailed(render_signals(occluded_l_room, grid))
        assert result.layout.same_as(occluded_l_room, atol=0.02)
        assert sum(wall.source == 'junction' for wall in result.walls) == 1

    def test_cuboid_mode(self, notched_room, grid):
        columns = corner_columns(visible_vertex_columns(notched_room, grid), grid.width)
        chosen, others = columns[[0, 1, 4, 5]], columns[[2, 3, 6, 7]]
        y_w = np.maximum(corner_encoding(chosen, grid.width), 0.8 * corner_encoding(others, grid.width))
        rendered = render_signals(notched_room, grid)
        sig = BoundarySignals(rendered.y_c, rendered.y_f, y_w)

        general = reconstruct(sig)
        cuboid = reconstruct(sig, mode='cuboid')
        assert general.corner_count == 8
        assert cuboid.corner_count == 4
        assert iou_3d(cuboid, notched_room) >= 0.9
        box = ManhattanLayout([[-3, -2], [3, -2], [3, 2], [-3, 2]], camera_height=1.6, ceiling_height=3.1)
        assert iou_3d(cuboid, box) >= 0.98

    @pytest.mark.parametrize('corner_count', [6, 8])
    def test_cuboid_mode_on_general_rooms(self, corner_count, grid):
        rng = np.random.default_rng(500 + corner_count)
        scores = []
        for _ in range(100):
            gt = generate_room(RoomSpec(corner_count=corner_count), rng)
            pred = reconstruct(render_signals(gt, grid), mode='cuboid')
            assert pred.corner_count == 4
            scores.append(iou_3d(pred, gt))
        assert np.median(scores) >= 0.5

    def test_roll_equivariance(self, grid):
        gt = generate_room(RoomSpec(corner_count=8, seed=9))
        sig = render_signals(gt, grid)
        shift = 10
        rolled = reconstruct(rotate_signals(sig, shift))
        expected = rotate_layout(reconstruct(sig), shift, grid.width)
        assert rolled.same_as(expected, atol=1e-6)

    def test_scale_equivariance(self, offset_cuboid, grid):
        sig = render_signals(offset_cuboid, grid)
        base = reconstruct(sig)
        doubled = reconstruct(sig, camera_height=3.2)
        assert doubled.camera_height == pytest.approx(2 * base.camera_height)
        assert doubled.ceiling_height == pytest.approx(2 * base.ceiling_height)
        np.testing.assert_allclose(doubled.world_polygon(), 2 * base.world_polygon(), rtol=1e-6, atol=1e-9)

    def test_deterministic(self, grid):
        sig = render_signals(generate_room(RoomSpec(corner_count=10, seed=4)), grid)
        first, second = reconstruct(sig), reconstruct(sig)
        np.testing.assert_array_equal(first.floor_polygon, second.floor_polygon)
        assert first.yaw == second.yaw

    def test_latency(self, grid):
        sig = render_signals(generate_room(RoomSpec(corner_count=8, seed=2)), grid)
        timings = []
        for _ in range(100):
            start = time.perf_counter()
            reconstruct(sig)
            timings.append(time.perf_counter() - start)
        assert np.median(timings) < 0.02

    def test_small_grid(self, offset_cuboid, small_grid):
        pred = reconstruct(render_signals(offset_cuboid, small_grid))
        assert iou_3d(pred, offset_cuboid) >= 0.98


class TestReconstructErrors:

    def test_no_peaks(self, square_room, grid):
        rendered = render_signals(square_room, grid)
        sig = BoundarySignals(rendered.y_c, rendered.y_f, np.zeros(grid.width))
        with pytest.raises(ReconstructionError, match='fewer than 4 peaks') as info:
            reconstruct(sig)
        assert info.value.stage == 'peaks'

    def test_unknown_mode(self, square_room, grid):
        with pytest.raises(ReconstructionError) as info:
            reconstruct(render_signals(square_room, grid), mode='spherical')
        assert info.value.stage == 'mode'

    def test_floor_above_horizon(self, grid):
        width = grid.width
        sig = BoundarySignals(np.full(width, -0.5), np.full(width, -0.1),
                              corner_encoding([100, 300, 600, 900], width))
        with pytest.raises(ReconstructionError) as info:
            reconstruct(sig)
        assert info.value.stage == 'heights'

    def test_detailed_result(self, offset_cuboid, grid):
        result = reconstruct_detailed(render_signals(offset_cuboid, ImageGrid(512, 256)))
        assert len(result.peaks) == 4
        assert len(result.walls) == 4
        assert result.to_dict()['layout']['ceiling_height'] == pytest.approx(2.9, abs=1e-6)
