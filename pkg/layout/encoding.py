"""
1D layout representation: exact rendering of layouts and annotations into
(y_c, y_f, y_w) boundary signals, and the surface class map they imply.
"""
import logging

import numpy as np

from config import Config
from exceptions import AnnotationValidationError, GeometryDomainError, LayoutValidationError
from geometry.transforms import (normalize_u, pixel_to_uv, project_to_horizontal_plane,
                                 uv_to_pixel)
from layout.models import (BoundarySignals, CornerAnnotation, SurfaceClass, SurfaceClassMap,
                           edge_axes)

logger = logging.getLogger(__name__)


def horizontal_distance(layout, u):
    """Distance from the camera to the first wall hit along each longitude in `u`"""
    u_local = np.atleast_1d(np.asarray(u, dtype=np.float64)) - layout.yaw
    vertices = layout.floor_polygon
    following = np.roll(vertices, -1, axis=0)
    axes = edge_axes(vertices, 1e-9 * max(1.0, float(np.abs(vertices).max())))

    # axis 1: edge along Z at constant x; axis 0: edge along X at constant z
    along_z = axes == 1
    const = np.where(along_z, vertices[:, 0], vertices[:, 1])
    lo = np.where(along_z, np.minimum(vertices[:, 1], following[:, 1]),
                  np.minimum(vertices[:, 0], following[:, 0]))
    hi = np.where(along_z, np.maximum(vertices[:, 1], following[:, 1]),
                  np.maximum(vertices[:, 0], following[:, 0]))

    cos_u = np.cos(u_local)[:, None]
    sin_u = np.sin(u_local)[:, None]
    with np.errstate(divide='ignore', invalid='ignore'):
        t = const[None, :] / np.where(along_z[None, :], cos_u, sin_u)
        other = t * np.where(along_z[None, :], sin_u, cos_u)
    tol = 1e-9 * max(1.0, float(np.abs(vertices).max()))
    hit = np.isfinite(t) & (t > tol) & (other >= lo - tol) & (other <= hi + tol)
    distance = np.where(hit, t, np.inf).min(axis=1)
    if not np.all(np.isfinite(distance)):
        raise LayoutValidationError("A viewing ray leaves the room: camera is outside the floor polygon")
    return distance


def boundary_at(layout, u):
    """Exact (y_c, y_f) latitudes of the wall boundaries at longitudes `u`"""
    distance = horizontal_distance(layout, u)
    y_f = np.arctan(layout.camera_height / distance)
    y_c = -np.arctan((layout.ceiling_height - layout.camera_height) / distance)
    return y_c, y_f


def corner_columns(columns, width):
    """Quantize real corner columns to the nearest column, halves going to the lower one"""
    columns = np.asarray(columns, dtype=np.float64)
    return np.mod(np.ceil(columns - 0.5), width).astype(int)


def visible_vertex_columns(layout, grid):
    """Real-valued columns of the vertices the camera can see, in polygon order"""
    world = layout.world_polygon()
    u = np.arctan2(world[:, 1], world[:, 0])
    distance = np.hypot(world[:, 0], world[:, 1])
    first_hit = horizontal_distance(layout, u)
    visible = first_hit >= distance - 1e-7 * max(1.0, float(distance.max()))
    if not np.all(visible):
        logger.debug("%d of %d vertices are occluded", int((~visible).sum()), len(world))
    columns, _ = uv_to_pixel((normalize_u(u), np.zeros_like(u)), grid)
    return np.atleast_1d(columns)[visible]


def corner_encoding(corner_cols, width, c=Config.CORNER_DECAY):
    """y_w[i] = c ** (circular column distance to the nearest corner)"""
    corner_cols = np.atleast_1d(np.asarray(corner_cols)).astype(int)
    if corner_cols.size == 0:
        raise GeometryDomainError("corner_encoding needs at least one corner column")
    if not 0 < c < 1:
        raise GeometryDomainError(f"Decay constant must lie in (0, 1), got {c}")

    columns = np.arange(width)
    dx = np.abs(columns[:, None] - np.mod(corner_cols, width)[None, :])
    dx = np.minimum(dx, width - dx).min(axis=1)
    return c ** dx


def render_signals(layout, grid, c=Config.CORNER_DECAY):
    """Analytic 1D ground truth of a layout on a panorama grid"""
    y_c, y_f = boundary_at(layout, grid.column_u())
    corners = corner_columns(visible_vertex_columns(layout, grid), grid.width)
    return BoundarySignals(y_c, y_f, corner_encoding(corners, grid.width, c))


def corner_pixels(layout, grid):
    """(columns, ceiling_rows, floor_rows) of every vertex in polygon order, occluded or not"""
    world = layout.world_polygon()
    u = np.arctan2(world[:, 1], world[:, 0])
    distance = np.hypot(world[:, 0], world[:, 1])
    v_floor = np.arctan2(layout.camera_height, distance)
    v_ceiling = -np.arctan2(layout.ceiling_height - layout.camera_height, distance)

    columns, floor_rows = uv_to_pixel((u, v_floor), grid)
    _, ceiling_rows = uv_to_pixel((u, v_ceiling), grid)
    return np.atleast_1d(columns), np.atleast_1d(ceiling_rows), np.atleast_1d(floor_rows)


def layout_to_annotation(layout, grid):
    """Corner annotation of a layout whose vertices are all visible"""
    columns, ceiling_rows, floor_rows = corner_pixels(layout, grid)
    return CornerAnnotation(columns, ceiling_rows, floor_rows, grid)


def _wall_distances(corners_xz, corner_u, u):
    """Horizontal distance along each longitude to the straight wall between adjacent corners"""
    count = len(corners_xz)
    offsets = np.mod(corner_u - corner_u[0], 2 * np.pi)
    query = np.mod(u - corner_u[0], 2 * np.pi)
    segment = np.searchsorted(offsets, query, side='right') - 1

    start = corners_xz[segment]
    end = corners_xz[(segment + 1) % count]
    edge = end - start
    numerator = start[:, 0] * edge[:, 1] - start[:, 1] * edge[:, 0]
    denominator = np.cos(u) * edge[:, 1] - np.sin(u) * edge[:, 0]
    with np.errstate(divide='ignore', invalid='ignore'):
        distance = numerator / denominator
    if not np.all(np.isfinite(distance) & (distance > 0)):
        bad = int(segment[~(np.isfinite(distance) & (distance > 0))][0])
        raise AnnotationValidationError(
            f"Wall between corners {bad} and {(bad + 1) % count} does not face the camera")
    return distance


def annotation_to_signals(ann, c=Config.CORNER_DECAY):
    """
    Rasterize an annotation into boundary signals

    Adjacent corners are lifted to 3D (floor corners onto the floor plane,
    ceiling corners onto a common ceiling plane) and every column samples the
    straight wall edge between them, so boundaries follow the curved
    projection of straight walls instead of straight pixel lines.
    """
    grid = ann.grid
    u, v_floor = pixel_to_uv(ann.columns, ann.floor_rows, grid)
    _, v_ceiling = pixel_to_uv(ann.columns, ann.ceiling_rows, grid)
    if np.any(v_floor <= 0):
        raise AnnotationValidationError("Floor corners must lie below the horizon")
    if np.any(v_ceiling >= 0):
        raise AnnotationValidationError("Ceiling corners must lie above the horizon")

    # any common plane height works: the projection is scale free
    floor_xz = np.stack(project_to_horizontal_plane((u, v_floor), 1.0), axis=1)
    ceiling_xz = np.stack(project_to_horizontal_plane((u, v_ceiling), -1.0), axis=1)

    column_u = grid.column_u()
    floor_distance = _wall_distances(floor_xz, u, column_u)
    ceiling_distance = _wall_distances(ceiling_xz, u, column_u)

    y_f = np.arctan(1.0 / floor_distance)
    y_c = -np.arctan(1.0 / ceiling_distance)
    y_w = corner_encoding(corner_columns(ann.columns, grid.width), grid.width, c)
    return BoundarySignals(y_c, y_f, y_w)


def signals_to_class_map(sig, grid):
    """Ceiling above y_c, floor below y_f, wall in between, judged at pixel centers"""
    if sig.width != grid.width:
        raise GeometryDomainError(f"Signal width {sig.width} does not match grid width {grid.width}")
    v = grid.row_v()[:, None]
    labels = np.full((grid.height, grid.width), SurfaceClass.WALL, dtype=np.uint8)
    labels[v < sig.y_c[None, :]] = SurfaceClass.CEILING
    labels[v > sig.y_f[None, :]] = SurfaceClass.FLOOR
    return SurfaceClassMap(labels)
