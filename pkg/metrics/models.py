from dataclasses import dataclass
from typing import Optional

from exceptions import MetricDomainError


@dataclass
class MetricsReport:
    """
    Evaluation of one predicted layout against ground truth

    corner_error and pixel_error are None when they do not apply (corner
    counts differ, or no signals were given).
    """
    iou_3d: float
    corner_error: Optional[float] = None
    pixel_error: Optional[float] = None

    def __post_init__(self):
        if not 0.0 <= self.iou_3d <= 1.0:
            raise MetricDomainError(f"iou_3d must lie in [0, 1], got {self.iou_3d}")
        if self.corner_error is not None and self.corner_error < 0:
            raise MetricDomainError(f"corner_error must be non-negative, got {self.corner_error}")
        if self.pixel_error is not None and not 0.0 <= self.pixel_error <= 1.0:
            raise MetricDomainError(f"pixel_error must lie in [0, 1], got {self.pixel_error}")

    def to_dict(self):
        return {
            'iou_3d': self.iou_3d,
            'corner_error': self.corner_error,
            'pixel_error': self.pixel_error
        }

    def to_lines(self):
        """Human-readable report, percentages for the two error metrics"""
        def percent(value):
            return 'n/a' if value is None else f'{100 * value:.4f}%'

        return [
            f'3D IoU: {100 * self.iou_3d:.4f}%',
            f'Corner error: {percent(self.corner_error)}',
            f'Pixel error: {percent(self.pixel_error)}',
        ]
