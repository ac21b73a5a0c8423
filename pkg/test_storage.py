import json

import numpy as np
import pytest

from exceptions import FileFormatError
from geometry.models import ImageGrid
from layout.encoding import layout_to_annotation, render_signals
from layout.models import ManhattanLayout
from storage.file_store import (AnnotationFile, LayoutFile, SignalsFile, read_image,
                                write_image)
from storage.visualize import floor_plan, overlay_boundaries, save_report_images


class TestSignalsFile:

    def test_round_trip_is_exact(self, tmp_path, offset_cuboid, small_grid):
        sig = render_signals(offset_cuboid, small_grid)
        path = SignalsFile.write(tmp_path / 'room.signals.json', sig, c=0.9, provenance='unit test')
        record = SignalsFile.read(path)
        np.testing.assert_array_equal(record.signals.y_c, sig.y_c)
        np.testing.assert_array_equal(record.signals.y_f, sig.y_f)
        np.testing.assert_array_equal(record.signals.y_w, sig.y_w)
        assert record.c == 0.9
        assert record.provenance == 'unit test'

    def test_header(self, tmp_path, offset_cuboid, small_grid):
        path = SignalsFile.write(tmp_path / 'room.json', render_signals(offset_cuboid, small_grid))
        document = json.loads(path.read_text())
        assert document['format'] == 'horizon-signals'
        assert document['version'] == 1
        assert document['width'] == 256

    def test_raw_array(self, tmp_path, offset_cuboid, small_grid):
        sig = render_signals(offset_cuboid, small_grid)
        path = SignalsFile.write(tmp_path / 'room.signals.json', sig, raw=True)
        assert path.suffix == '.npy'
        assert np.load(path).shape == (3, 256)
        np.testing.assert_array_equal(SignalsFile.read(path).signals.y_f, sig.y_f)

    def test_predictor_shaped_array(self, tmp_path, offset_cuboid, small_grid):
        sig = render_signals(offset_cuboid, small_grid)
        np.save(tmp_path / 'pred.npy', np.stack([sig.y_c, sig.y_f, sig.y_w])[:, None, :])
        assert SignalsFile.read(tmp_path / 'pred.npy').signals.width == 256

    def test_wrong_array_shape(self, tmp_path):
        np.save(tmp_path / 'bad.npy', np.zeros((2, 16)))
        with pytest.raises(FileFormatError, match='shape'):
            SignalsFile.read(tmp_path / 'bad.npy')

    def test_invalid_json(self, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text('{\n"format": \n')
        with pytest.raises(FileFormatError) as info:
            SignalsFile.read(path)
        assert info.value.line is not None

    def test_foreign_document(self, tmp_path):
        path = tmp_path / 'other.json'
        path.write_text(json.dumps({'format': 'something-else'}))
        with pytest.raises(FileFormatError, match='horizon-signals'):
            SignalsFile.read(path)

    def test_width_mismatch(self, tmp_path):
        path = tmp_path / 'short.json'
        path.write_text(json.dumps({'format': 'horizon-signals', 'version': 1, 'width': 3,
                                    'y_c': [-0.5, -0.5], 'y_f': [0.5, 0.5], 'y_w': [0, 0]}))
        with pytest.raises(FileFormatError, match='width'):
            SignalsFile.read(path)

    def test_invalid_signals(self, tmp_path):
        path = tmp_path / 'crossed.json'
        path.write_text(json.dumps({'format': 'horizon-signals', 'version': 1, 'width': 1,
                                    'y_c': [0.5], 'y_f': [0.2], 'y_w': [0]}))
        with pytest.raises(FileFormatError, match='y_c'):
            SignalsFile.read(path)


class TestLayoutFile:

    def test_round_trip_is_exact(self, tmp_path, occluded_l_room):
        path = LayoutFile.write(tmp_path / 'room.layout.txt', occluded_l_room)
        layout = LayoutFile.read(path)
        np.testing.assert_array_equal(layout.floor_polygon, occluded_l_room.floor_polygon)
        assert layout.ceiling_height == occluded_l_room.ceiling_height
        assert layout.yaw == 0.0

    def test_yaw_survives(self, tmp_path, offset_cuboid):
        turned = ManhattanLayout(offset_cuboid.floor_polygon, camera_height=1.6, ceiling_height=2.9, yaw=0.123)
        assert LayoutFile.read(LayoutFile.write(tmp_path / 'turned.txt', turned)).yaw == 0.123

    def test_defaults_and_comments(self, tmp_path):
        path = tmp_path / 'minimal.txt'
        path.write_text('# hand written\nceiling_height 3.0\n\nvertices 4\n-1 -1\n1 -1\n1 1\n-1 1\n')
        layout = LayoutFile.read(path)
        assert layout.camera_height == pytest.approx(1.6)
        assert layout.area() == pytest.approx(4.0)

    def test_bad_number_reports_line(self, tmp_path):
        path = tmp_path / 'bad.txt'
        path.write_text('ceiling_height 3.0\nvertices 4\n-1 -1\n1 oops\n1 1\n-1 1\n')
        with pytest.raises(FileFormatError) as info:
            LayoutFile.read(path)
        assert info.value.line == 4
        assert ':4:' in str(info.value)

    def test_unknown_key(self, tmp_path):
        path = tmp_path / 'bad.txt'
        path.write_text('ceiling_height 3.0\nwidth 4\n')
        with pytest.raises(FileFormatError, match="unknown key 'width'") as info:
            LayoutFile.read(path)
        assert info.value.line == 2

    def test_vertex_count_mismatch(self, tmp_path):
        path = tmp_path / 'bad.txt'
        path.write_text('ceiling_height 3.0\nvertices 6\n-1 -1\n1 -1\n1 1\n-1 1\n')
        with pytest.raises(FileFormatError, match='expected 6 vertices'):
            LayoutFile.read(path)

    def test_missing_ceiling(self, tmp_path):
        path = tmp_path / 'bad.txt'
        path.write_text('vertices 4\n-1 -1\n1 -1\n1 1\n-1 1\n')
        with pytest.raises(FileFormatError, match='ceiling_height'):
            LayoutFile.read(path)

    def test_invalid_polygon(self, tmp_path):
        path = tmp_path / 'clockwise.txt'
        path.write_text('ceiling_height 3.0\nvertices 4\n-1 -1\n-1 1\n1 1\n1 -1\n')
        with pytest.raises(FileFormatError, match='counter-clockwise'):
            LayoutFile.read(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / 'empty.txt'
        path.write_text('\n# nothing here\n')
        with pytest.raises(FileFormatError, match='file is empty'):
            LayoutFile.read(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileFormatError, match='cannot read'):
            LayoutFile.read(tmp_path / 'absent.txt')


class TestAnnotationFile:

    def test_round_trip(self, tmp_path, notched_room, grid):
        annotation = layout_to_annotation(notched_room, grid)
        read = AnnotationFile.read(AnnotationFile.write(tmp_path / 'room.annotation.txt', annotation))
        assert read.grid == grid
        np.testing.assert_array_equal(read.columns, annotation.columns)
        np.testing.assert_array_equal(read.floor_rows, annotation.floor_rows)

    def test_grid_line_overrides_argument(self, tmp_path):
        path = tmp_path / 'ann.txt'
        path.write_text('grid 256 128\n10 40 90\n70 40 90\n130 40 90\n200 40 90\n')
        assert AnnotationFile.read(path, grid=ImageGrid(1024, 512)).grid == ImageGrid(256, 128)

    def test_bad_grid(self, tmp_path):
        path = tmp_path / 'ann.txt'
        path.write_text('grid 300 128\n10 40 90\n')
        with pytest.raises(FileFormatError) as info:
            AnnotationFile.read(path)
        assert info.value.line == 1

    def test_wrong_column_count(self, tmp_path):
        path = tmp_path / 'ann.txt'
        path.write_text('10 40 90\n70 40\n')
        with pytest.raises(FileFormatError, match='expected 3 numbers') as info:
            AnnotationFile.read(path)
        assert info.value.line == 2

    def test_invalid_annotation(self, tmp_path):
        path = tmp_path / 'ann.txt'
        path.write_text('10 40 90\n70 40 90\n130 40 90\n')
        with pytest.raises(FileFormatError, match='even'):
            AnnotationFile.read(path)

    @pytest.mark.parametrize('text, line, reason', [
        ('grid 256 128\n10 40 90\n70 40 90\n70 45 95\n200 40 90\n', 4, 'distinct'),
        ('10 40 90\n70 95 40\n130 40 90\n200 40 90\n', 2, 'ceiling_row must be above'),
        ('# corners\n10 40 90\n130 40 90\n70 40 90\n200 40 90\n', 4, 'strictly increasing'),
        ('grid 256 128\n10 40 90\n70 40 90\n300 40 90\n200 40 90\n', 4, r'\[0, 256\)'),
    ])
    def test_invalid_corner_names_its_line(self, tmp_path, text, line, reason):
        path = tmp_path / 'ann.txt'
        path.write_text(text)
        with pytest.raises(FileFormatError, match=reason) as info:
            AnnotationFile.read(path)
        assert info.value.line == line
        assert f'ann.txt:{line}:' in str(info.value)

    def test_empty_file(self, tmp_path):
        path = tmp_path / 'ann.txt'
        path.write_text('')
        with pytest.raises(FileFormatError, match='file is empty'):
            AnnotationFile.read(path)


class TestImages:

    def test_png_round_trip(self, tmp_path, rng):
        img = rng.integers(0, 256, size=(16, 32, 3), dtype=np.uint8)
        path = write_image(tmp_path / 'pano.png', img)
        np.testing.assert_array_equal(read_image(path), img)

    def test_unreadable_image(self, tmp_path):
        path = tmp_path / 'pano.png'
        path.write_text('not an image')
        with pytest.raises(FileFormatError):
            read_image(path)

    def test_overlay_draws_boundaries(self, offset_cuboid, small_grid):
        sig = render_signals(offset_cuboid, small_grid)
        img = np.zeros((128, 256, 3), dtype=np.uint8)
        overlay = overlay_boundaries(img, sig, small_grid)
        assert overlay.shape == img.shape
        assert overlay.any()
        assert not overlay[64].any()

    def test_floor_plan(self, notched_room):
        plan = floor_plan(notched_room, size=128)
        assert plan.shape == (128, 128, 3)
        assert tuple(plan[64, 64]) == (0, 0, 0)

    def test_report_images(self, tmp_path, offset_cuboid, small_grid):
        sig = render_signals(offset_cuboid, small_grid)
        img = np.full((128, 256, 3), 96, dtype=np.uint8)
        overlay, plan = save_report_images(tmp_path / 'viz' / 'room', img, sig, offset_cuboid, small_grid)
        assert overlay.name == 'room_overlay.png'
        assert plan.name == 'room_floorplan.png'
        assert read_image(overlay).shape == (128, 256, 3)
