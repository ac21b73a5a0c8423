"""
On-disk formats

SignalsFile     JSON object: format/version header, width, decay constant c,
                optional provenance and the y_c, y_f, y_w arrays. Floats are
                written with full double precision (17 significant digits).
                A raw variant stores the (3, W) float64 array as .npy, the
                same shape a boundary predictor emits.
LayoutFile      Text, one key per line ('camera_height', 'ceiling_height',
                'yaw', 'vertices N') followed by N lines 'x z' in meters.
AnnotationFile  Text, optional 'grid W H' line, then one corner per line:
                'column ceiling_row floor_row' in pixels.
Blank lines and lines starting with '#' are ignored by the text readers.
"""
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from PIL import Image

from config import Config
from exceptions import FileFormatError, LayoutToolkitError
from geometry.models import ImageGrid
from layout.models import BoundarySignals, CornerAnnotation, ManhattanLayout

logger = logging.getLogger(__name__)

SIGNALS_FORMAT = 'horizon-signals'
SIGNALS_VERSION = 1
RAW_SUFFIX = '.npy'


@dataclass(eq=False)
class SignalsRecord:
    signals: BoundarySignals
    c: float = Config.CORNER_DECAY
    provenance: Optional[str] = None


def _content_lines(path):
    """(line number, tokens) for every non-blank, non-comment line"""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise FileFormatError(path, f"cannot read file: {e.strerror}") from e
    lines = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith('#'):
            lines.append((number, stripped.split()))
    if not lines:
        raise FileFormatError(path, "file is empty")
    return lines


def _floats(path, number, tokens, count):
    if len(tokens) != count:
        raise FileFormatError(path, f"expected {count} numbers, got {len(tokens)}", number)
    try:
        return [float(token) for token in tokens]
    except ValueError as e:
        raise FileFormatError(path, f"not a number: {e}", number) from e


def _write_text(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info("Wrote %s", path)
    return path


class SignalsFile:
    """Read and write boundary signals"""

    @staticmethod
    def write(path, sig, c=Config.CORNER_DECAY, provenance=None, raw=False):
        path = Path(path)
        if raw or path.suffix == RAW_SUFFIX:
            path = path.with_suffix(RAW_SUFFIX)
            path.parent.mkdir(parents=True, exist_ok=True)
            np.save(path, np.stack([sig.y_c, sig.y_f, sig.y_w]))
            logger.info("Wrote %s", path)
            return path

        document = {
            'format': SIGNALS_FORMAT,
            'version': SIGNALS_VERSION,
            'width': sig.width,
            'c': float(c),
            'provenance': provenance,
            'y_c': sig.y_c.tolist(),
            'y_f': sig.y_f.tolist(),
            'y_w': sig.y_w.tolist()
        }
        return _write_text(path, json.dumps(document, indent=1) + '\n')

    @staticmethod
    def read(path, c=Config.CORNER_DECAY):
        """SignalsRecord from a JSON document or a raw (3, W) / (3, 1, W) array"""
        path = Path(path)
        if path.suffix == RAW_SUFFIX:
            return SignalsRecord(SignalsFile._read_raw(path), c=c, provenance=path.name)

        try:
            document = json.loads(path.read_text())
        except OSError as e:
            raise FileFormatError(path, f"cannot read file: {e.strerror}") from e
        except json.JSONDecodeError as e:
            raise FileFormatError(path, f"invalid JSON: {e.msg}", e.lineno) from e

        if not isinstance(document, dict) or document.get('format') != SIGNALS_FORMAT:
            raise FileFormatError(path, f"not a {SIGNALS_FORMAT} document")
        missing = [key for key in ('width', 'y_c', 'y_f', 'y_w') if key not in document]
        if missing:
            raise FileFormatError(path, f"missing fields: {', '.join(missing)}")
        for key in ('y_c', 'y_f', 'y_w'):
            if len(document[key]) != document['width']:
                raise FileFormatError(
                    path, f"{key} has {len(document[key])} values, width is {document['width']}")

        try:
            signals = BoundarySignals(document['y_c'], document['y_f'], document['y_w'])
        except (LayoutToolkitError, TypeError, ValueError) as e:
            raise FileFormatError(path, str(e)) from e
        return SignalsRecord(signals, c=float(document.get('c', c)), provenance=document.get('provenance'))

    @staticmethod
    def _read_raw(path):
        try:
            array = np.load(path)
        except (OSError, ValueError) as e:
            raise FileFormatError(path, f"cannot load array: {e}") from e
        array = np.asarray(array, dtype=np.float64)
        if array.ndim == 3 and array.shape[1] == 1:
            array = array[:, 0, :]
        if array.ndim != 2 or array.shape[0] != 3:
            raise FileFormatError(path, f"expected a (3, W) array, got shape {array.shape}")
        try:
            return BoundarySignals(array[0], array[1], array[2])
        except LayoutToolkitError as e:
            raise FileFormatError(path, str(e)) from e


class LayoutFile:
    """Read and write Manhattan layouts"""

    @staticmethod
    def write(path, layout):
        lines = [
            '# Manhattan layout: heights in meters, floor polygon (x z) counter-clockwise',
            f'camera_height {layout.camera_height!r}',
            f'ceiling_height {layout.ceiling_height!r}',
            f'yaw {layout.yaw!r}',
            f'vertices {layout.corner_count}',
        ]
        lines += [f'{float(x)!r} {float(z)!r}' for x, z in layout.floor_polygon]
        return _write_text(path, '\n'.join(lines) + '\n')

    @staticmethod
    def read(path):
        lines = _content_lines(path)
        values = {'camera_height': Config.CAMERA_HEIGHT, 'yaw': 0.0}
        vertices = []
        expected = None
        header_line = lines[0][0]

        for number, tokens in lines:
            if expected is None:
                key = tokens[0]
                if key == 'vertices':
                    if len(tokens) != 2 or not tokens[1].isdigit():
                        raise FileFormatError(path, "expected 'vertices N'", number)
                    expected = int(tokens[1])
                    header_line = number
                elif key in ('camera_height', 'ceiling_height', 'yaw'):
                    values[key] = _floats(path, number, tokens[1:], 1)[0]
                else:
                    raise FileFormatError(path, f"unknown key '{key}'", number)
            else:
                if len(vertices) == expected:
                    raise FileFormatError(path, f"more than {expected} vertices", number)
                vertices.append(_floats(path, number, tokens, 2))

        if 'ceiling_height' not in values:
            raise FileFormatError(path, "missing 'ceiling_height'")
        if expected is None:
            raise FileFormatError(path, "missing 'vertices N'")
        if len(vertices) != expected:
            raise FileFormatError(path, f"expected {expected} vertices, got {len(vertices)}", header_line)
        try:
            return ManhattanLayout(vertices, camera_height=values['camera_height'],
                                   ceiling_height=values['ceiling_height'], yaw=values['yaw'])
        except LayoutToolkitError as e:
            raise FileFormatError(path, str(e), header_line) from e


def _first_bad_corner(columns, ceiling_rows, floor_rows, grid):
    """Index of the first corner breaking a per-corner annotation rule, or None"""
    bad = (columns < 0) | (columns >= grid.width) | (ceiling_rows >= floor_rows)
    for rows in (ceiling_rows, floor_rows):
        bad |= (rows < 0) | (rows >= grid.height)
    _, first_seen = np.unique(columns, return_index=True)
    repeated = np.ones(len(columns), dtype=bool)
    repeated[first_seen] = False
    bad |= repeated
    # i where the column after corner i is smaller; one such step is the wrap past W
    descents = np.flatnonzero(np.roll(columns, -1) < columns)
    if len(descents) > 1:
        wrap = len(columns) - 1
        step = descents[0] if wrap in descents else descents[1]
        bad[(step + 1) % len(columns)] = True
    hits = np.flatnonzero(bad)
    return int(hits[0]) if len(hits) else None


class AnnotationFile:
    """Read and write corner annotations"""

    @staticmethod
    def write(path, annotation):
        lines = [
            '# column ceiling_row floor_row (pixels)',
            f'grid {annotation.grid.width} {annotation.grid.height}',
        ]
        lines += [f'{float(col)!r} {float(top)!r} {float(bottom)!r}' for col, top, bottom in
                  zip(annotation.columns, annotation.ceiling_rows, annotation.floor_rows)]
        return _write_text(path, '\n'.join(lines) + '\n')

    @staticmethod
    def read(path, grid=None):
        """CornerAnnotation; a 'grid W H' line overrides `grid`"""
        lines = _content_lines(path)
        corners, numbers = [], []
        for number, tokens in lines:
            if tokens[0] == 'grid':
                width, height = _floats(path, number, tokens[1:], 2)
                try:
                    grid = ImageGrid(int(width), int(height))
                except LayoutToolkitError as e:
                    raise FileFormatError(path, str(e), number) from e
                continue
            corners.append(_floats(path, number, tokens, 3))
            numbers.append(number)

        if not corners:
            raise FileFormatError(path, "no corners")
        grid = grid or ImageGrid()
        columns, ceiling_rows, floor_rows = np.array(corners).T
        try:
            return CornerAnnotation(columns, ceiling_rows, floor_rows, grid)
        except LayoutToolkitError as e:
            line = None
            if len(corners) >= 4 and len(corners) % 2 == 0:
                index = _first_bad_corner(columns, ceiling_rows, floor_rows, grid)
                line = numbers[index] if index is not None else None
            raise FileFormatError(path, str(e), line) from e


def read_image(path):
    """H x W x 3 uint8 panorama"""
    try:
        with Image.open(path) as image:
            return np.asarray(image.convert('RGB'))
    except OSError as e:
        raise FileFormatError(path, f"cannot read image: {e}") from e


def write_image(path, img):
    """Lossless PNG"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(np.asarray(img, dtype=np.uint8)).save(path, format='PNG')
    logger.info("Wrote %s", path)
    return path
