"""
Floor/ceiling recovery, boundary segmentation and principal-direction fitting
"""
import logging

import numpy as np

from config import Config
from exceptions import SignalValidationError
from geometry.transforms import project_to_horizontal_plane
from postprocess.models import WallSegment

logger = logging.getLogger(__name__)


def column_longitudes(width):
    return 2 * np.pi * (np.arange(width) + 0.5) / width - np.pi


def fold_angle(angle):
    """Deviation from the nearest Manhattan axis, in [-pi/4, pi/4)"""
    folded = np.mod(angle + np.pi / 4, np.pi / 2) - np.pi / 4
    return float(folded - np.pi / 2) if folded >= np.pi / 4 else float(folded)


def recover_heights(sig, camera_height=Config.CAMERA_HEIGHT):
    """
    Floor and ceiling plane heights in the camera frame

    Each column's floor boundary fixes the wall distance for the assumed
    camera height; the ceiling boundary in the same column then gives a
    ceiling height. The ceiling plane is the mean over all columns.
    """
    if np.any(sig.y_f <= 0):
        raise SignalValidationError("Floor boundary must lie below the horizon in every column")
    if np.any(sig.y_c >= 0):
        raise SignalValidationError("Ceiling boundary must lie above the horizon in every column")

    distance = camera_height / np.tan(sig.y_f)
    above_camera = distance * np.tan(-sig.y_c)
    return float(camera_height), float(-np.mean(above_camera))


def project_ceiling_boundary(sig, ceiling_y):
    """(W, 2) floor-plan points of the ceiling-wall boundary on the ceiling plane"""
    u = column_longitudes(sig.width)
    x, z = project_to_horizontal_plane((u, sig.y_c), ceiling_y)
    return np.stack([x, z], axis=1)


def fit_principal_direction(points):
    """(angle, length, residual variance) of a 2D point set"""
    if len(points) < 2:
        return 0.0, 0.0, 0.0
    centered = points - points.mean(axis=0)
    covariance = centered.T @ centered / len(points)
    eigenvalues, eigenvectors = np.linalg.eigh(covariance)
    principal = eigenvectors[:, 1]
    projection = centered @ principal
    angle = float(np.arctan2(principal[1], principal[0]))
    return angle, float(np.ptp(projection)), float(max(eigenvalues[0], 0.0))


def split_segments(peaks, points, u_offset=0.0):
    """Partition the columns at each peak and fit every part"""
    width = len(points)
    u = column_longitudes(width)
    count = len(peaks)
    segments = []
    for s in range(count):
        start = int(peaks.columns[s])
        stop = int(peaks.columns[(s + 1) % count])
        if stop <= start:
            stop += width
        columns = np.arange(start, stop) % width
        part = points[columns[1:]] if len(columns) > 1 else points[columns]
        angle, length, variance = fit_principal_direction(part)
        segments.append(WallSegment(
            columns=columns,
            points=part,
            u_start=float(u[start] - u_offset),
            u_end=float(u[stop % width] - u_offset),
            angle=angle,
            deviation=fold_angle(angle),
            length=length,
            variance=variance,
        ))
    return segments


def merge_short_segments(peaks, points, min_columns=Config.MIN_SEGMENT_COLUMNS):
    """Drop peaks that open or close a segment shorter than min_columns"""
    while len(peaks) > 1:
        segments = split_segments(peaks, points)
        lengths = np.array([len(segment.columns) for segment in segments])
        shortest = int(np.argmin(lengths))
        if lengths[shortest] >= min_columns:
            break
        count = len(peaks)
        previous = segments[(shortest - 1) % count]
        following = segments[(shortest + 1) % count]
        if previous.variance <= following.variance:
            drop = shortest                  # opening peak joins it to the previous part
        else:
            drop = (shortest + 1) % count    # closing peak joins it to the next part
        logger.debug("Merging %d-column segment at column %d", lengths[shortest],
                     int(peaks.columns[shortest]))
        peaks = peaks.without(drop)
    return peaks


def estimate_rotation(segments):
    """
    Yaw misalignment of the Manhattan axes

    Length-weighted circular mean of the folded principal directions, taken on
    4*theta so the 90 degree symmetry of the axes is respected.
    """
    deviations = np.array([segment.deviation for segment in segments])
    weights = np.array([segment.length for segment in segments])
    if weights.sum() <= 0:
        logger.warning("All wall segments are degenerate; assuming no rotation")
        return 0.0
    mean = np.arctan2(np.sum(weights * np.sin(4 * deviations)),
                      np.sum(weights * np.cos(4 * deviations))) / 4
    return fold_angle(mean)
