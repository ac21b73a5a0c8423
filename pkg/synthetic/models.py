from dataclasses import dataclass
from typing import Optional

from config import Config
from exceptions import GenerationError

CORNER_COUNTS = (4, 6, 8, 10, 12)


@dataclass(frozen=True)
class RoomSpec:
    """Parameters of the random room generator (meters)"""
    corner_count: int = 4
    min_half_extent: float = 1.5
    max_half_extent: float = 3.5
    min_ceiling_height: float = 2.6
    max_ceiling_height: float = 3.4
    camera_jitter: float = 0.5
    camera_height: float = Config.CAMERA_HEIGHT
    seed: Optional[int] = None

    def __post_init__(self):
        if self.corner_count not in CORNER_COUNTS:
            raise GenerationError(f"corner_count must be one of {CORNER_COUNTS}, got {self.corner_count}")
        if not 0 < self.min_half_extent <= self.max_half_extent:
            raise GenerationError("Half extents must be positive and ordered")
        if not 0 < self.min_ceiling_height <= self.max_ceiling_height:
            raise GenerationError("Ceiling heights must be positive and ordered")
        if not self.camera_height > 0:
            raise GenerationError("camera_height must be positive")
        if self.min_ceiling_height <= self.camera_height:
            raise GenerationError("Ceiling must be above the camera")
        if not 0 <= self.camera_jitter < self.min_half_extent:
            raise GenerationError("camera_jitter must keep the camera inside the room")
