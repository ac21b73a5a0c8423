"""
Pixel <-> UV <-> camera-frame transforms

Conventions:
    u = 2*pi*(col + 0.5)/W - pi      (longitude, increases with column)
    v = pi*(row + 0.5)/H - pi/2      (latitude, positive toward the floor)
    x = cos(v)cos(u), y = sin(v), z = cos(v)sin(u)
"""
import numpy as np

from exceptions import GeometryDomainError, NoIntersectionError
from geometry.models import UV, Point3


def _scalar_or_array(value):
    value = np.asarray(value, dtype=np.float64)
    return float(value) if value.ndim == 0 else value


def normalize_u(u):
    """Wrap longitudes into [-pi, pi)"""
    u = np.mod(np.asarray(u, dtype=np.float64) + np.pi, 2 * np.pi) - np.pi
    u = np.where(u >= np.pi, u - 2 * np.pi, u)
    return _scalar_or_array(u)


def pixel_to_uv(col, row, grid):
    col = np.asarray(col, dtype=np.float64)
    row = np.asarray(row, dtype=np.float64)
    if np.any(col < 0) or np.any(col >= grid.width):
        raise GeometryDomainError(f"Column out of range [0, {grid.width})")
    if np.any(row < 0) or np.any(row >= grid.height):
        raise GeometryDomainError(f"Row out of range [0, {grid.height})")

    u = 2 * np.pi * (col + 0.5) / grid.width - np.pi
    v = np.pi * (row + 0.5) / grid.height - np.pi / 2
    return UV(normalize_u(u), _scalar_or_array(v))


def uv_to_pixel(uv, grid):
    """Inverse of pixel_to_uv; the column wraps into [0, W)"""
    u, v = np.asarray(uv[0], dtype=np.float64), np.asarray(uv[1], dtype=np.float64)
    col = (u + np.pi) * grid.width / (2 * np.pi) - 0.5
    col = np.mod(col, grid.width)
    # values a rounding error below W belong to column 0
    col = np.where(col > grid.width - 1e-9, col - grid.width, col)
    row = (v + np.pi / 2) * grid.height / np.pi - 0.5
    return _scalar_or_array(col), _scalar_or_array(row)


def uv_to_dir(uv):
    u, v = np.asarray(uv[0], dtype=np.float64), np.asarray(uv[1], dtype=np.float64)
    return Point3(
        _scalar_or_array(np.cos(v) * np.cos(u)),
        _scalar_or_array(np.sin(v)),
        _scalar_or_array(np.cos(v) * np.sin(u)),
    )


def dir_to_uv(p):
    x = np.asarray(p[0], dtype=np.float64)
    y = np.asarray(p[1], dtype=np.float64)
    z = np.asarray(p[2], dtype=np.float64)
    norm = np.sqrt(x * x + y * y + z * z)
    if np.any(norm == 0):
        raise GeometryDomainError("Cannot take the direction of a zero vector")

    # arctan2(0, 0) == 0 fixes u at the poles
    u = np.arctan2(z, x)
    v = np.arcsin(np.clip(y / norm, -1.0, 1.0))
    return UV(normalize_u(u), _scalar_or_array(v))


def project_to_horizontal_plane(uv, plane_y):
    """Intersect viewing rays with the plane y = plane_y, returning (x, z)"""
    u, v = np.asarray(uv[0], dtype=np.float64), np.asarray(uv[1], dtype=np.float64)
    if plane_y == 0:
        raise NoIntersectionError("Plane through the camera center")
    if np.any(np.sign(v) != np.sign(plane_y)):
        side = 'floor' if plane_y > 0 else 'ceiling'
        raise NoIntersectionError(f"Ray does not reach the {side} plane y={plane_y}")

    distance = plane_y / np.tan(v)
    return _scalar_or_array(distance * np.cos(u)), _scalar_or_array(distance * np.sin(u))


def plane_point_to_uv(x, z, plane_y):
    """Direction of the point (x, plane_y, z) seen from the camera"""
    x = np.asarray(x, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    u = np.arctan2(z, x)
    v = np.arctan2(plane_y, np.hypot(x, z))
    return UV(normalize_u(u), _scalar_or_array(v))


def rotate_xz(points, angle):
    """Rotate (N, 2) floor-plan points by `angle` radians (longitudes increase by angle)"""
    points = np.asarray(points, dtype=np.float64)
    c, s = np.cos(angle), np.sin(angle)
    rotation = np.array([[c, -s], [s, c]])
    return points @ rotation.T
