"""
Pano Stretch warp

A panorama pixel at (u, v) with depth d sits at
    (d cos v cos u, d sin v, d cos v sin u)
Scaling X and Z by (k_x, k_z) and projecting back gives a closed-form UV map
in which the depth cancels. Images are warped by inverse mapping with
bilinear sampling; layouts and signals are warped directly.
"""
import logging

import numpy as np
from scipy import ndimage

from config import Config
from exceptions import GeometryDomainError
from geometry.models import UV, ImageGrid
from geometry.transforms import normalize_u, uv_to_pixel
from layout.encoding import corner_columns, corner_encoding
from layout.models import BoundarySignals, ManhattanLayout
from stretch.models import StretchParams

logger = logging.getLogger(__name__)


def stretch_uv_forward(uv, k):
    u, v = np.asarray(uv[0], dtype=np.float64), np.asarray(uv[1], dtype=np.float64)
    cos_u, sin_u = np.cos(u), np.sin(u)
    u_new = np.arctan2(k.k_z * sin_u, k.k_x * cos_u)
    scale = np.sqrt((k.k_x * cos_u) ** 2 + (k.k_z * sin_u) ** 2)
    v_new = np.arctan2(np.sin(v), scale * np.cos(v))
    return UV(normalize_u(u_new), v_new if v_new.ndim else float(v_new))


def stretch_uv_inverse(uv, k):
    """
    Source (u, v) of a target pixel (u', v')

    The latitude has a removable singularity where sin(u') = 0, so the
    Z-based form k_z tan(v') sin(u) / sin(u') is used where |sin u'| >= |cos u'|
    and the equivalent X-based form k_x tan(v') cos(u) / cos(u') elsewhere.
    """
    u_t, v_t = np.asarray(uv[0], dtype=np.float64), np.asarray(uv[1], dtype=np.float64)
    sin_t, cos_t = np.sin(u_t), np.cos(u_t)
    u = np.arctan2(k.k_x * sin_t, k.k_z * cos_t)

    use_z = np.abs(sin_t) >= np.abs(cos_t)
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(use_z,
                         k.k_z * np.sin(u) / sin_t,
                         k.k_x * np.cos(u) / cos_t)
    v = np.arctan(np.tan(v_t) * ratio)
    return UV(normalize_u(u), v if v.ndim else float(v))


def stretch_image(img, k):
    """Warp an equirectangular image; wraps at the u seam, clamps at the poles"""
    img = np.asarray(img)
    height, width = img.shape[:2]
    grid = ImageGrid(width, height)

    u_t, v_t = np.meshgrid(grid.column_u(), grid.row_v())
    u_s, v_s = stretch_uv_inverse((u_t, v_t), k)
    col = (u_s + np.pi) * width / (2 * np.pi) - 0.5
    row = (v_s + np.pi / 2) * height / np.pi - 0.5

    # one wrapped column on each side covers col in [-0.5, W - 0.5)
    padded = np.concatenate([img[:, -1:], img, img[:, :1]], axis=1)
    coords = np.stack([row, col + 1])

    planes = padded[..., None] if padded.ndim == 2 else padded
    warped = np.stack([
        ndimage.map_coordinates(planes[..., ch].astype(np.float64), coords, order=1, mode='nearest')
        for ch in range(planes.shape[-1])
    ], axis=-1)
    if img.ndim == 2:
        warped = warped[..., 0]

    if np.issubdtype(img.dtype, np.integer):
        info = np.iinfo(img.dtype)
        warped = np.clip(np.round(warped), info.min, info.max)
    return warped.astype(img.dtype)


def stretch_layout(layout, k):
    """Scale floor-polygon vertices by (k_x, k_z); heights are unchanged"""
    quarter_turns = layout.yaw / (np.pi / 2)
    if abs(quarter_turns - round(quarter_turns)) > 1e-9:
        raise GeometryDomainError("Stretching needs a layout aligned with the world X/Z axes")

    world = layout.world_polygon()
    if layout.yaw != 0.0:
        world = np.round(world, 12)
    stretched = world * np.array([k.k_x, k.k_z])
    return ManhattanLayout(stretched, camera_height=layout.camera_height,
                           ceiling_height=layout.ceiling_height)


def stretch_signals(sig, k, c=Config.CORNER_DECAY):
    """
    Warp boundary signals without a polygon

    Boundary samples are forward-mapped and resampled onto the column grid
    with circular interpolation in u'. Exact corner columns (y_w == 1) are
    forward-mapped and re-encoded; other y_w profiles are resampled.
    """
    width = sig.width
    u = 2 * np.pi * (np.arange(width) + 0.5) / width - np.pi
    u_c, y_c = stretch_uv_forward((u, sig.y_c), k)
    _, y_f = stretch_uv_forward((u, sig.y_f), k)

    y_c = np.interp(u, u_c, y_c, period=2 * np.pi)
    y_f = np.interp(u, u_c, y_f, period=2 * np.pi)

    corners = np.flatnonzero(sig.y_w >= 1.0)
    if corners.size:
        u_corner, _ = stretch_uv_forward((u[corners], np.zeros(corners.size)), k)
        col, _ = uv_to_pixel((u_corner, np.zeros(corners.size)), ImageGrid.from_width(width))
        y_w = corner_encoding(corner_columns(col, width), width, c)
    else:
        y_w = np.clip(np.interp(u, u_c, sig.y_w, period=2 * np.pi), 0.0, 1.0)
    return BoundarySignals(y_c, y_f, y_w)


def sample_stretch(rng, low=Config.STRETCH_MIN, high=Config.STRETCH_MAX,
                   flip_prob=Config.STRETCH_FLIP_PROB):
    """Draw k_x, k_z from U[low, high], each replaced by its reciprocal with probability flip_prob"""
    factors = []
    for _ in range(2):
        factor = rng.uniform(low, high)
        if rng.random() < flip_prob:
            factor = 1.0 / factor
        factors.append(factor)
    return StretchParams(*factors)
