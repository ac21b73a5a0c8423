from dataclasses import dataclass

from exceptions import GeometryDomainError


@dataclass(frozen=True)
class StretchParams:
    """Scale factors along X and Z (the Y factor is fixed to 1)"""
    k_x: float = 1.0
    k_z: float = 1.0

    def __post_init__(self):
        if not (self.k_x > 0 and self.k_z > 0):
            raise GeometryDomainError(f"Stretch factors must be positive, got ({self.k_x}, {self.k_z})")

    def inverse(self):
        return StretchParams(1.0 / self.k_x, 1.0 / self.k_z)

    def compose(self, other):
        """Stretch by self, then by other"""
        return StretchParams(self.k_x * other.k_x, self.k_z * other.k_z)

    def to_dict(self):
        return {'k_x': self.k_x, 'k_z': self.k_z}
