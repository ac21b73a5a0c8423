"""
Exact area arithmetic for rectilinear polygons
"""
import numpy as np
from shapely.geometry import Polygon

from exceptions import MetricDomainError
from layout.models import edge_axes


def _check_rectilinear(vertices):
    vertices = np.asarray(vertices, dtype=np.float64).reshape(-1, 2)
    if len(vertices) < 4:
        raise MetricDomainError("A rectilinear polygon needs at least 4 vertices")
    tol = 1e-9 * max(1.0, float(np.abs(vertices).max()))
    if np.any(edge_axes(vertices, tol) < 0):
        raise MetricDomainError("Polygon edges must be axis-aligned")
    if not Polygon(vertices).is_valid:
        raise MetricDomainError("Polygon is not simple")
    return vertices


def decompose(vertices):
    """
    Split a simple rectilinear polygon into disjoint rectangles

    Vertical slabs between consecutive distinct vertex x values; inside a slab
    the edges of constant z crossing its middle pair up into rectangles.
    Returns an (M, 4) array of (x0, x1, z0, z1).
    """
    vertices = _check_rectilinear(vertices)
    following = np.roll(vertices, -1, axis=0)
    tol = 1e-9 * max(1.0, float(np.abs(vertices).max()))
    constant_z = np.abs(following[:, 1] - vertices[:, 1]) <= tol
    edge_lo = np.minimum(vertices[:, 0], following[:, 0])[constant_z]
    edge_hi = np.maximum(vertices[:, 0], following[:, 0])[constant_z]
    edge_z = vertices[constant_z, 1]

    xs = np.unique(vertices[:, 0])
    rectangles = []
    for x0, x1 in zip(xs[:-1], xs[1:]):
        middle = 0.5 * (x0 + x1)
        crossing = np.sort(edge_z[(edge_lo < middle) & (edge_hi > middle)])
        for z0, z1 in zip(crossing[0::2], crossing[1::2]):
            rectangles.append((x0, x1, z0, z1))
    return np.array(rectangles, dtype=np.float64).reshape(-1, 4)


def rectangle_overlap(a, b):
    """Total pairwise overlap area of two (M, 4) rectangle sets"""
    width = np.minimum(a[:, None, 1], b[None, :, 1]) - np.maximum(a[:, None, 0], b[None, :, 0])
    depth = np.minimum(a[:, None, 3], b[None, :, 3]) - np.maximum(a[:, None, 2], b[None, :, 2])
    return float(np.sum(np.clip(width, 0, None) * np.clip(depth, 0, None)))


def rectilinear_area(vertices):
    rectangles = decompose(vertices)
    return float(np.sum((rectangles[:, 1] - rectangles[:, 0]) * (rectangles[:, 3] - rectangles[:, 2])))


def rectilinear_intersection_area(a, b):
    """Exact intersection area of two simple rectilinear polygons"""
    return rectangle_overlap(decompose(a), decompose(b))


def polygon_intersection_area(a, b):
    """Intersection area of two arbitrary simple polygons"""
    first, second = Polygon(a), Polygon(b)
    if not (first.is_valid and second.is_valid):
        raise MetricDomainError("Polygon is not simple")
    return float(first.intersection(second).area)
