"""
Random Manhattan rooms

Rooms start from an axis-aligned rectangle around a jittered camera and get
rectangular notches cut out of some of its corners, two vertices per notch.
Notch depths keep the camera inside every wall's half-plane, so each corner
is visible from the camera.
"""
import logging

import numpy as np
from scipy.ndimage import gaussian_filter1d
from shapely.geometry import Point, Polygon

from config import Config
from exceptions import GenerationError, GeometryDomainError, LayoutValidationError
from layout.encoding import render_signals
from layout.models import BoundarySignals, ManhattanLayout

logger = logging.getLogger(__name__)

MIN_WALL_LENGTH = 0.5
MIN_CLEARANCE = 0.3
MIN_CORNER_SEPARATION_DEG = 8.0
LATITUDE_MARGIN = 1e-3


def _notch(previous, corner, following, rng):
    """Replace `corner` by the three vertices of a rectangular notch"""
    incoming = np.sign(corner - previous)
    outgoing = np.sign(following - corner)
    in_axis = int(np.argmax(np.abs(incoming)))
    out_axis = int(np.argmax(np.abs(outgoing)))

    in_limit = abs(corner[in_axis]) - MIN_CLEARANCE
    out_limit = abs(corner[out_axis]) - MIN_CLEARANCE
    if in_limit < MIN_WALL_LENGTH or out_limit < MIN_WALL_LENGTH:
        return None
    depth_in = rng.uniform(MIN_WALL_LENGTH, in_limit)
    depth_out = rng.uniform(MIN_WALL_LENGTH, out_limit)

    start = corner - incoming * depth_in
    inner = start + outgoing * depth_out
    end = corner + outgoing * depth_out
    return [start, inner, end]


def _draw_polygon(spec, rng):
    half_x, half_z = rng.uniform(spec.min_half_extent, spec.max_half_extent, size=2)
    center_x, center_z = rng.uniform(-spec.camera_jitter, spec.camera_jitter, size=2)
    base = np.array([
        [center_x + half_x, center_z - half_z],
        [center_x + half_x, center_z + half_z],
        [center_x - half_x, center_z + half_z],
        [center_x - half_x, center_z - half_z],
    ])

    notched = set(rng.choice(4, size=(spec.corner_count - 4) // 2, replace=False).tolist())
    vertices = []
    for i, corner in enumerate(base):
        if i in notched:
            replacement = _notch(base[i - 1], corner, base[(i + 1) % 4], rng)
            if replacement is None:
                return None
            vertices.extend(replacement)
        else:
            vertices.append(corner)
    return np.array(vertices)


def rejection_reason(vertices):
    """Why a candidate floor polygon is unusable, or None"""
    edges = np.roll(vertices, -1, axis=0) - vertices
    if np.min(np.abs(edges).sum(axis=1)) < MIN_WALL_LENGTH:
        return 'wall shorter than minimum'
    polygon = Polygon(vertices)
    if not polygon.is_valid:
        return 'polygon not simple'
    if polygon.exterior.distance(Point(0.0, 0.0)) < MIN_CLEARANCE:
        return 'camera too close to a wall'

    u = np.sort(np.arctan2(vertices[:, 1], vertices[:, 0]))
    gaps = np.diff(np.append(u, u[0] + 2 * np.pi))
    if np.degrees(gaps.min()) < MIN_CORNER_SEPARATION_DEG:
        return 'corners too close in longitude'
    return None


def generate_room(spec, rng=None, retries=Config.GENERATION_RETRIES):
    """Random ManhattanLayout with exactly spec.corner_count vertices around the camera"""
    rng = rng if rng is not None else np.random.default_rng(spec.seed)
    for attempt in range(retries):
        vertices = _draw_polygon(spec, rng)
        ceiling_height = rng.uniform(spec.min_ceiling_height, spec.max_ceiling_height)
        if vertices is None:
            continue
        reason = rejection_reason(vertices)
        if reason is not None:
            logger.debug("Rejected room candidate %d: %s", attempt, reason)
            continue
        try:
            return ManhattanLayout(vertices, camera_height=spec.camera_height,
                                   ceiling_height=ceiling_height)
        except LayoutValidationError as e:
            logger.debug("Rejected room candidate %d: %s", attempt, e)

    raise GenerationError(f"No valid {spec.corner_count}-corner room after {retries} attempts")


def generate_noisy_signals(layout, grid, noise_sigma, rng, c=Config.CORNER_DECAY, blur_sigma=2.0):
    """
    Rendered signals with Gaussian boundary noise and a blurred corner signal

    Boundaries are clamped so the ceiling stays above and the floor below the
    horizon. noise_sigma = 0 returns the exact rendering.
    """
    if noise_sigma < 0:
        raise GeometryDomainError(f"noise_sigma must be non-negative, got {noise_sigma}")
    sig = render_signals(layout, grid, c)
    if noise_sigma == 0:
        return sig

    y_c = np.clip(sig.y_c + rng.normal(0.0, noise_sigma, sig.width),
                  -np.pi / 2 + LATITUDE_MARGIN, -LATITUDE_MARGIN)
    y_f = np.clip(sig.y_f + rng.normal(0.0, noise_sigma, sig.width),
                  LATITUDE_MARGIN, np.pi / 2 - LATITUDE_MARGIN)
    y_w = np.clip(gaussian_filter1d(sig.y_w, blur_sigma, mode='wrap'), 0.0, 1.0)
    return BoundarySignals(y_c, y_f, y_w)
