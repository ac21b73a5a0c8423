"""
Layout evaluation metrics: 3D IoU, corner error and pixel error
"""
import logging

import numpy as np

from exceptions import IncomparableLayoutsError, MetricDomainError
from geometry.models import ImageGrid
from layout.encoding import corner_pixels, signals_to_class_map
from metrics.models import MetricsReport
from metrics.polygon import polygon_intersection_area, rectilinear_intersection_area

logger = logging.getLogger(__name__)

# exact rotations by k quarter turns, longitudes increasing
_QUARTER_TURNS = [
    np.array([[1.0, 0.0], [0.0, 1.0]]),
    np.array([[0.0, -1.0], [1.0, 0.0]]),
    np.array([[-1.0, 0.0], [0.0, -1.0]]),
    np.array([[0.0, 1.0], [-1.0, 0.0]]),
]


def _canonical_key(layout):
    return (layout.area(), layout.camera_height, layout.ceiling_height, layout.yaw,
            layout.floor_polygon.tobytes())


def floor_intersection_area(a, b):
    """Floor-plan overlap of two layouts sharing the camera origin"""
    quarter = (a.yaw - b.yaw) / (np.pi / 2)
    turns = int(round(quarter))
    if abs(quarter - turns) <= 1e-9:
        # a's polygon expressed in b's frame stays axis-aligned
        a_in_b = a.floor_polygon @ _QUARTER_TURNS[turns % 4].T
        return rectilinear_intersection_area(a_in_b, b.floor_polygon)
    return polygon_intersection_area(a.world_polygon(), b.world_polygon())


def iou_3d(pred, gt):
    """Intersection over union of the two room prisms"""
    # the computation is order dependent in floating point; fix the order
    a, b = sorted((pred, gt), key=_canonical_key)

    overlap_height = min(a.floor_y, b.floor_y) - max(a.ceiling_y, b.ceiling_y)
    intersection = floor_intersection_area(a, b) * max(overlap_height, 0.0)
    union = a.volume() + b.volume() - intersection
    if not union > 0:
        raise MetricDomainError("Layouts have zero union volume")
    return float(min(max(intersection / union, 0.0), 1.0))


def corner_error(pred, gt, grid=None):
    """
    Mean pixel distance between matched corners over the image diagonal

    All 2N ceiling and floor corners are compared; the predicted ordering is
    aligned to the ground truth by the best circular shift. Horizontal
    distances wrap around the panorama seam.
    """
    grid = grid or ImageGrid()
    if pred.corner_count != gt.corner_count:
        raise IncomparableLayoutsError(
            f"Corner counts differ: predicted {pred.corner_count}, ground truth {gt.corner_count}")

    pred_cols, pred_ceiling, pred_floor = corner_pixels(pred, grid)
    gt_cols, gt_ceiling, gt_floor = corner_pixels(gt, grid)

    best = np.inf
    for shift in range(pred.corner_count):
        dx = np.abs(np.roll(pred_cols, shift) - gt_cols)
        dx = np.minimum(dx, grid.width - dx)
        ceiling = np.hypot(dx, np.roll(pred_ceiling, shift) - gt_ceiling)
        floor = np.hypot(dx, np.roll(pred_floor, shift) - gt_floor)
        best = min(best, float(np.mean(np.concatenate([ceiling, floor]))))
    return best / grid.diagonal


def pixel_error(pred_sig, gt_sig, grid=None):
    """Fraction of pixels whose ceiling/wall/floor class differs"""
    grid = grid or ImageGrid.from_width(gt_sig.width)
    if pred_sig.width != gt_sig.width or gt_sig.width != grid.width:
        raise MetricDomainError(
            f"Signal widths differ: predicted {pred_sig.width}, ground truth {gt_sig.width}, grid {grid.width}")
    pred_map = signals_to_class_map(pred_sig, grid)
    gt_map = signals_to_class_map(gt_sig, grid)
    return float(np.mean(pred_map.labels != gt_map.labels))


def evaluate(pred, gt, grid=None, pred_sig=None, gt_sig=None):
    """All metrics that apply; corner_error is None when corner counts differ"""
    grid = grid or ImageGrid()
    try:
        corners = corner_error(pred, gt, grid)
    except IncomparableLayoutsError as e:
        logger.info("Corner error not applicable: %s", e)
        corners = None

    pixels = None
    if pred_sig is not None and gt_sig is not None:
        pixels = pixel_error(pred_sig, gt_sig, grid)
    return MetricsReport(iou_3d(pred, gt), corners, pixels)
