import numpy as np

from config import Config
from exceptions import GeometryDomainError
from postprocess.models import PeakList


def window_radius(width, window_deg=Config.PEAK_WINDOW_DEG):
    """Half-window in columns for a horizontal field of view of window_deg"""
    return int(round(width * window_deg / 360.0))


def detect_peaks(y_w, window_deg=Config.PEAK_WINDOW_DEG, threshold=Config.PEAK_THRESHOLD):
    """
    Prominent peaks of a circular corner signal

    A column is a peak when it exceeds `threshold` and dominates every other
    column within the window: strictly against lower columns, or-equal
    against higher ones, so a plateau keeps only its lowest column.
    """
    y_w = np.asarray(y_w, dtype=np.float64).ravel()
    width = len(y_w)
    if width == 0:
        raise GeometryDomainError("Cannot detect peaks in an empty signal")

    radius = window_radius(width, window_deg)
    is_peak = y_w > threshold
    for offset in range(1, radius + 1):
        if offset % width == 0:
            continue
        is_peak &= y_w >= np.roll(y_w, -offset)   # column i + offset
        is_peak &= y_w > np.roll(y_w, offset)     # column i - offset

    columns = np.flatnonzero(is_peak)
    return PeakList(columns, y_w[columns])
