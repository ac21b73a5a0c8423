from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from config import Config
from exceptions import GeometryDomainError


class UV(NamedTuple):
    """Longitude u in [-pi, pi), latitude v in [-pi/2, pi/2], v positive toward the floor"""
    u: np.ndarray
    v: np.ndarray


class Point3(NamedTuple):
    """Camera-frame point in meters, y positive downward"""
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray


@dataclass(frozen=True)
class ImageGrid:
    """Equirectangular raster dimensions (W = 2H)"""
    width: int = Config.IMAGE_WIDTH
    height: int = Config.IMAGE_HEIGHT

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise GeometryDomainError(f"Grid dimensions must be positive, got {self.width}x{self.height}")
        if self.width != 2 * self.height:
            raise GeometryDomainError(
                f"Equirectangular grid requires W = 2H, got W={self.width}, H={self.height}")

    @classmethod
    def from_width(cls, width):
        return cls(width=int(width), height=int(width) // 2)

    @property
    def diagonal(self):
        return float(np.hypot(self.width, self.height))

    def column_u(self):
        """Longitude of every column center"""
        return 2 * np.pi * (np.arange(self.width) + 0.5) / self.width - np.pi

    def row_v(self):
        """Latitude of every row center"""
        return np.pi * (np.arange(self.height) + 0.5) / self.height - np.pi / 2
