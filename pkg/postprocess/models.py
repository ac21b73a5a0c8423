from dataclasses import dataclass, field

import numpy as np

X_WALL = 'x'   # plane x = offset
Z_WALL = 'z'   # plane z = offset


def other_normal(normal):
    return Z_WALL if normal == X_WALL else X_WALL


@dataclass(eq=False)
class PeakList:
    """Prominent y_w peaks, sorted by column"""
    columns: np.ndarray
    scores: np.ndarray

    def __post_init__(self):
        self.columns = np.asarray(self.columns, dtype=int).ravel()
        self.scores = np.asarray(self.scores, dtype=np.float64).ravel()

    def __len__(self):
        return len(self.columns)

    def top(self, count, width, tolerance=0.0):
        """
        The `count` strongest peaks, sorted by column

        Scores within `tolerance` of the best remaining one count as tied. A tie
        goes to the peak farthest (circularly, over `width` columns) from the
        peaks already taken, then to the lower column.
        """
        remaining = list(range(len(self)))
        taken = []
        while remaining and len(taken) < count:
            index = np.array(remaining)
            scores = self.scores[index]
            tied = index[scores >= scores.max() - tolerance]
            spread = np.zeros(len(tied))
            if taken:
                gaps = np.abs(self.columns[tied][:, None] - self.columns[taken][None, :]) % width
                spread = np.minimum(gaps, width - gaps).min(axis=1)
            best = int(tied[np.lexsort((self.columns[tied], -spread))[0]])
            taken.append(best)
            remaining.remove(best)
        keep = np.sort(taken)
        return PeakList(self.columns[keep], self.scores[keep])

    def without(self, index):
        return PeakList(np.delete(self.columns, index), np.delete(self.scores, index))

    def to_dict(self):
        return {'columns': self.columns.tolist(), 'scores': self.scores.tolist()}


@dataclass(eq=False)
class WallSegment:
    """
    Columns between two adjacent peaks and their ceiling-plane points

    `columns` runs from the opening peak up to (not including) the closing
    peak; `points` are the (x, z) ceiling points of every column but the
    opening peak. `angle` is the raw first principal direction, `deviation`
    the same angle folded into [-45 deg, 45 deg).
    """
    columns: np.ndarray
    points: np.ndarray
    u_start: float
    u_end: float
    angle: float = 0.0
    deviation: float = 0.0
    length: float = 0.0
    variance: float = 0.0

    @property
    def natural_normal(self):
        """Wall type implied by the principal direction alone"""
        return Z_WALL if abs(np.cos(self.angle)) >= abs(np.sin(self.angle)) else X_WALL


@dataclass
class Wall:
    normal: str
    offset: float
    u_start: float
    u_end: float
    source: str = 'voted'
    votes: int = field(default=0)

    def hit(self, u):
        """Where the ray at longitude u meets this wall's plane, with its distance"""
        c, s = np.cos(u), np.sin(u)
        along = c if self.normal == X_WALL else s
        distance = self.offset / along if along != 0 else np.inf
        point = np.array([distance * c, distance * s])
        if self.normal == X_WALL:
            point[0] = self.offset
        else:
            point[1] = self.offset
        return point, distance


@dataclass(eq=False)
class Reconstruction:
    """A reconstructed layout with the intermediate results that produced it"""
    layout: object
    peaks: PeakList
    rotation: float
    walls: list
    floor_y: float
    ceiling_y: float

    def to_dict(self):
        return {
            'layout': self.layout.to_dict(),
            'peaks': self.peaks.to_dict(),
            'rotation': self.rotation,
            'walls': [{'normal': w.normal, 'offset': w.offset, 'source': w.source} for w in self.walls],
            'floor_y': self.floor_y,
            'ceiling_y': self.ceiling_y
        }
