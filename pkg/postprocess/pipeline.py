"""
Signals -> Manhattan layout
"""
import logging

from config import Config
from exceptions import LayoutValidationError, ReconstructionError, SignalValidationError
from geometry.transforms import rotate_xz
from layout.models import ManhattanLayout
from postprocess.models import Reconstruction
from postprocess.peaks import detect_peaks
from postprocess.planes import (estimate_rotation, merge_short_segments, project_ceiling_boundary,
                                recover_heights, split_segments)
from postprocess.walls import build_walls, wall_corners

logger = logging.getLogger(__name__)

MODES = ('general', 'cuboid')


def reconstruct_detailed(sig, mode='general', camera_height=Config.CAMERA_HEIGHT,
                         window_deg=Config.PEAK_WINDOW_DEG, threshold=Config.PEAK_THRESHOLD,
                         vote_radius=Config.VOTE_RADIUS, vote_step=Config.VOTE_STEP,
                         min_segment_columns=Config.MIN_SEGMENT_COLUMNS,
                         tie_tolerance=Config.CUBOID_TIE_TOLERANCE):
    if mode not in MODES:
        raise ReconstructionError('mode', f"unknown mode '{mode}', expected one of {MODES}")

    peaks = detect_peaks(sig.y_w, window_deg, threshold)
    logger.debug("Detected %d peaks", len(peaks))
    if len(peaks) < 4:
        raise ReconstructionError('peaks', 'fewer than 4 peaks')

    try:
        floor_y, ceiling_y = recover_heights(sig, camera_height)
    except SignalValidationError as e:
        raise ReconstructionError('heights', str(e)) from e
    logger.debug("Floor plane y=%.4f, ceiling plane y=%.4f", floor_y, ceiling_y)

    points = project_ceiling_boundary(sig, ceiling_y)
    merged = merge_short_segments(peaks, points, min_segment_columns)
    # rotation always comes from the full segmentation, one segment per visible wall
    rotation = estimate_rotation(split_segments(merged, points))
    logger.debug("Estimated rotation %.4f rad", rotation)

    if mode == 'cuboid':
        peaks = peaks.top(4, sig.width, tie_tolerance)
    else:
        peaks = merged
        if len(peaks) < 4:
            raise ReconstructionError('segments', 'fewer than 4 segments after merging short ones')
    aligned = split_segments(peaks, rotate_xz(points, -rotation), u_offset=rotation)

    walls = build_walls(aligned, force_cuboid=mode == 'cuboid', radius=vote_radius, step=vote_step)
    try:
        layout = ManhattanLayout.from_vertices(wall_corners(walls), camera_height=floor_y,
                                               ceiling_height=floor_y - ceiling_y, yaw=rotation)
    except LayoutValidationError as e:
        raise ReconstructionError('layout', str(e)) from e

    return Reconstruction(layout, peaks, rotation, walls, floor_y, ceiling_y)


def reconstruct(sig, mode='general', **options):
    """
    Manhattan layout from boundary signals

    General mode uses every prominent peak; cuboid mode keeps four of them,
    the highest, spread around the panorama when their scores tie.
    The returned layout is axis-aligned in its own frame and carries the
    estimated rotation as its yaw, so its world polygon lies in the input frame.
    """
    return reconstruct_detailed(sig, mode, **options).layout
