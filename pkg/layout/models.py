from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np
from shapely.geometry import Point, Polygon

from config import Config
from exceptions import AnnotationValidationError, LayoutValidationError, SignalValidationError
from geometry.models import ImageGrid
from geometry.transforms import rotate_xz


def signed_area(vertices):
    """Shoelace area in the (x, z) plane, positive for counter-clockwise order"""
    x, z = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.sum(x * np.roll(z, -1) - np.roll(x, -1) * z))


def edge_axes(vertices, tol):
    """Per edge: 0 when the edge runs along X (constant z), 1 along Z, -1 otherwise"""
    delta = np.roll(vertices, -1, axis=0) - vertices
    moves_x = np.abs(delta[:, 0]) > tol
    moves_z = np.abs(delta[:, 1]) > tol
    axes = np.full(len(vertices), -1)
    axes[moves_x & ~moves_z] = 0
    axes[moves_z & ~moves_x] = 1
    return axes


@dataclass(eq=False)
class ManhattanLayout:
    """
    Room as a vertical prism over a rectilinear floor polygon

    floor_polygon holds (x, z) vertices in the layout's own Manhattan frame,
    counter-clockwise in (x, z) (increasing longitude). The world frame is the
    layout frame rotated about the vertical axis by `yaw`.
    """
    floor_polygon: np.ndarray
    camera_height: float = Config.CAMERA_HEIGHT
    ceiling_height: float = 3.2
    yaw: float = 0.0

    def __post_init__(self):
        self.floor_polygon = np.array(self.floor_polygon, dtype=np.float64).reshape(-1, 2)
        self.camera_height = float(self.camera_height)
        self.ceiling_height = float(self.ceiling_height)
        self.yaw = float(self.yaw)
        self.validate()

    def validate(self):
        vertices = self.floor_polygon
        count = len(vertices)
        if not self.camera_height > 0:
            raise LayoutValidationError("camera_height must be positive")
        if not self.ceiling_height > self.camera_height:
            raise LayoutValidationError("ceiling_height must exceed camera_height")
        if count < 4 or count % 2:
            raise LayoutValidationError(f"Vertex count must be even and >= 4, got {count}")
        if not np.all(np.isfinite(vertices)):
            raise LayoutValidationError("Vertices must be finite")

        tol = 1e-9 * max(1.0, float(np.abs(vertices).max()))
        axes = edge_axes(vertices, tol)
        if np.any(axes < 0):
            bad = int(np.flatnonzero(axes < 0)[0])
            raise LayoutValidationError(f"Edge {bad} is not axis-aligned")
        if np.any(axes == np.roll(axes, -1)):
            raise LayoutValidationError("Consecutive edges must alternate axis")

        polygon = Polygon(vertices)
        if not polygon.is_valid:
            raise LayoutValidationError("Floor polygon is not simple")
        if signed_area(vertices) <= 0:
            raise LayoutValidationError("Floor polygon must be counter-clockwise")
        if not polygon.contains(Point(0.0, 0.0)):
            raise LayoutValidationError("Camera must lie strictly inside the floor polygon")

    @classmethod
    def from_vertices(cls, vertices, camera_height=Config.CAMERA_HEIGHT, ceiling_height=3.2,
                      yaw=0.0, tol=1e-6):
        """Build a layout after dropping repeated/collinear vertices and fixing orientation"""
        points = [np.asarray(p, dtype=np.float64) for p in vertices]
        changed = True
        while changed and len(points) > 2:
            changed = False
            for i in range(len(points)):
                prev_p, cur, next_p = points[i - 1], points[i], points[(i + 1) % len(points)]
                repeated = np.all(np.abs(cur - next_p) <= tol)
                collinear = (abs(prev_p[0] - cur[0]) <= tol and abs(cur[0] - next_p[0]) <= tol) or \
                            (abs(prev_p[1] - cur[1]) <= tol and abs(cur[1] - next_p[1]) <= tol)
                if repeated or collinear:
                    del points[i]
                    changed = True
                    break

        polygon = np.array(points, dtype=np.float64).reshape(-1, 2)
        if len(polygon) >= 3 and signed_area(polygon) < 0:
            polygon = polygon[::-1].copy()
        return cls(polygon, camera_height=camera_height, ceiling_height=ceiling_height, yaw=yaw)

    @property
    def floor_y(self):
        return self.camera_height

    @property
    def ceiling_y(self):
        return self.camera_height - self.ceiling_height

    @property
    def corner_count(self):
        return len(self.floor_polygon)

    def world_polygon(self):
        """Floor polygon in the camera (world) frame"""
        if self.yaw == 0.0:
            return self.floor_polygon.copy()
        return rotate_xz(self.floor_polygon, self.yaw)

    def area(self):
        return signed_area(self.floor_polygon)

    def volume(self):
        return self.area() * self.ceiling_height

    def corners_3d(self):
        """(N, 2, 3) world-frame corners: [:, 0] on the ceiling, [:, 1] on the floor"""
        xz = self.world_polygon()
        count = len(xz)
        corners = np.empty((count, 2, 3))
        corners[:, :, 0] = xz[:, None, 0]
        corners[:, :, 2] = xz[:, None, 1]
        corners[:, 0, 1] = self.ceiling_y
        corners[:, 1, 1] = self.floor_y
        return corners

    def same_as(self, other, atol=1e-9):
        """Same prism, vertex order compared up to a circular shift"""
        if self.corner_count != other.corner_count:
            return False
        if abs(self.camera_height - other.camera_height) > atol or \
                abs(self.ceiling_height - other.ceiling_height) > atol:
            return False
        mine, theirs = self.world_polygon(), other.world_polygon()
        return any(np.allclose(np.roll(mine, shift, axis=0), theirs, atol=atol)
                   for shift in range(self.corner_count))

    def to_dict(self):
        return {
            'camera_height': self.camera_height,
            'ceiling_height': self.ceiling_height,
            'yaw': self.yaw,
            'floor_polygon': self.floor_polygon.tolist()
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            data['floor_polygon'],
            camera_height=data.get('camera_height', Config.CAMERA_HEIGHT),
            ceiling_height=data['ceiling_height'],
            yaw=data.get('yaw', 0.0)
        )


@dataclass(eq=False)
class BoundarySignals:
    """Per-column ceiling-wall latitude, floor-wall latitude and corner score"""
    y_c: np.ndarray
    y_f: np.ndarray
    y_w: np.ndarray

    def __post_init__(self):
        self.y_c = np.array(self.y_c, dtype=np.float64).ravel()
        self.y_f = np.array(self.y_f, dtype=np.float64).ravel()
        self.y_w = np.array(self.y_w, dtype=np.float64).ravel()
        self.validate()

    def validate(self):
        width = len(self.y_c)
        if width == 0:
            raise SignalValidationError("Signals must not be empty")
        if len(self.y_f) != width or len(self.y_w) != width:
            raise SignalValidationError(
                f"Signal lengths differ: y_c={width}, y_f={len(self.y_f)}, y_w={len(self.y_w)}")
        for name, values in (('y_c', self.y_c), ('y_f', self.y_f)):
            if not np.all(np.abs(values) < np.pi / 2):
                raise SignalValidationError(f"{name} must lie in (-pi/2, pi/2)")
        if not np.all(self.y_c < self.y_f):
            column = int(np.flatnonzero(self.y_c >= self.y_f)[0])
            raise SignalValidationError(f"y_c must stay above y_f (violated at column {column})")
        if not np.all((self.y_w >= 0) & (self.y_w <= 1)):
            raise SignalValidationError("y_w must lie in [0, 1]")

    @property
    def width(self):
        return len(self.y_c)

    def to_dict(self):
        return {
            'width': self.width,
            'y_c': self.y_c.tolist(),
            'y_f': self.y_f.tolist(),
            'y_w': self.y_w.tolist()
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data['y_c'], data['y_f'], data['y_w'])


@dataclass(eq=False)
class CornerAnnotation:
    """Ordered corner pixels: one column and (ceiling_row, floor_row) per corner"""
    columns: np.ndarray
    ceiling_rows: np.ndarray
    floor_rows: np.ndarray
    grid: ImageGrid = field(default_factory=ImageGrid)

    def __post_init__(self):
        self.columns = np.array(self.columns, dtype=np.float64).ravel()
        self.ceiling_rows = np.array(self.ceiling_rows, dtype=np.float64).ravel()
        self.floor_rows = np.array(self.floor_rows, dtype=np.float64).ravel()
        self.validate()

    def validate(self):
        count = len(self.columns)
        if len(self.ceiling_rows) != count or len(self.floor_rows) != count:
            raise AnnotationValidationError("Every corner needs a column, a ceiling row and a floor row")
        if count < 4 or count % 2:
            raise AnnotationValidationError(
                f"A closed Manhattan room needs an even number (>= 4) of corners, got {count}")
        if np.any(self.columns < 0) or np.any(self.columns >= self.grid.width):
            raise AnnotationValidationError(f"Corner columns must lie in [0, {self.grid.width})")
        for rows in (self.ceiling_rows, self.floor_rows):
            if np.any(rows < 0) or np.any(rows >= self.grid.height):
                raise AnnotationValidationError(f"Corner rows must lie in [0, {self.grid.height})")
        if len(np.unique(self.columns)) != count:
            raise AnnotationValidationError("Corner columns must be distinct")
        descents = int(np.sum(np.roll(self.columns, -1) < self.columns))
        if descents != 1:
            raise AnnotationValidationError("Corner columns must be strictly increasing modulo W")
        if np.any(self.ceiling_rows >= self.floor_rows):
            raise AnnotationValidationError("ceiling_row must be above floor_row for every corner")

    @property
    def corner_count(self):
        return len(self.columns)


class SurfaceClass(IntEnum):
    CEILING = 0
    WALL = 1
    FLOOR = 2


@dataclass(eq=False)
class SurfaceClassMap:
    """H x W labels drawn from SurfaceClass"""
    labels: np.ndarray

    @property
    def height(self):
        return self.labels.shape[0]

    @property
    def width(self):
        return self.labels.shape[1]
