"""
Report images: boundary overlay on the panorama and a top-down floor plan
"""
import numpy as np
from PIL import Image, ImageDraw

from geometry.transforms import uv_to_pixel
from storage.file_store import write_image

BOUNDARY_COLOR = (0, 128, 255)
CORNER_COLOR = (255, 64, 0)
REFERENCE_COLOR = (0, 200, 0)


def _rows(latitudes, grid):
    _, rows = uv_to_pixel((grid.column_u(), latitudes), grid)
    return rows


def _polyline(draw, columns, rows, color, width):
    points = list(zip(columns.tolist(), rows.tolist()))
    draw.line(points, fill=color, width=width)


def overlay_boundaries(img, sig, grid, peaks=None, reference=None):
    """
    Panorama with the ceiling and floor boundaries drawn in

    `peaks` marks corner columns as vertical lines; `reference` signals
    (e.g. ground truth) are drawn in a second color.
    """
    canvas = Image.fromarray(np.asarray(img, dtype=np.uint8)).convert('RGB')
    draw = ImageDraw.Draw(canvas)
    columns = np.arange(grid.width) + 0.5
    line_width = max(1, grid.height // 256)

    if reference is not None:
        for latitudes in (reference.y_c, reference.y_f):
            _polyline(draw, columns, _rows(latitudes, grid) + 0.5, REFERENCE_COLOR, line_width)
    for latitudes in (sig.y_c, sig.y_f):
        _polyline(draw, columns, _rows(latitudes, grid) + 0.5, BOUNDARY_COLOR, line_width)

    if peaks is not None:
        ceiling, floor = _rows(sig.y_c, grid), _rows(sig.y_f, grid)
        for column in peaks.columns:
            draw.line([(column + 0.5, ceiling[column] + 0.5), (column + 0.5, floor[column] + 0.5)],
                      fill=CORNER_COLOR, width=line_width)
    return np.asarray(canvas)


def floor_plan(layout, size=512, margin=24, reference=None):
    """Top-down view of the floor polygon (world frame) with the camera at a cross"""
    polygons = [layout.world_polygon()]
    if reference is not None:
        polygons.append(reference.world_polygon())
    extent = max(float(np.abs(p).max()) for p in polygons)
    scale = (size / 2 - margin) / extent

    def to_pixels(points):
        # image rows grow downward, so z is flipped to keep the plan counter-clockwise
        return [(size / 2 + x * scale, size / 2 - z * scale) for x, z in points]

    canvas = Image.new('RGB', (size, size), (255, 255, 255))
    draw = ImageDraw.Draw(canvas)
    draw.polygon(to_pixels(layout.world_polygon()), outline=BOUNDARY_COLOR, fill=(220, 235, 255))
    if reference is not None:
        draw.polygon(to_pixels(reference.world_polygon()), outline=REFERENCE_COLOR)
    for x, y in to_pixels(layout.world_polygon()):
        draw.ellipse([x - 3, y - 3, x + 3, y + 3], fill=CORNER_COLOR)

    center = size / 2
    draw.line([(center - 6, center), (center + 6, center)], fill=(0, 0, 0))
    draw.line([(center, center - 6), (center, center + 6)], fill=(0, 0, 0))
    return np.asarray(canvas)


def save_report_images(prefix, img, sig, layout, grid, peaks=None):
    """Write <prefix>_overlay.png and <prefix>_floorplan.png; returns both paths"""
    overlay = overlay_boundaries(img, sig, grid, peaks=peaks)
    plan = floor_plan(layout)
    return (write_image(f'{prefix}_overlay.png', overlay),
            write_image(f'{prefix}_floorplan.png', plan))
