"""
Manhattan wall construction from fitted boundary segments
"""
import logging

import numpy as np

from config import Config
from exceptions import ReconstructionError
from postprocess.models import X_WALL, Z_WALL, Wall, other_normal

logger = logging.getLogger(__name__)


def _axis(normal):
    return 0 if normal == X_WALL else 1


def vote(values, radius=Config.VOTE_RADIUS, step=Config.VOTE_STEP):
    """
    Most supported plane offset for a set of point coordinates

    Candidates lie on a `step` grid anchored at the median and spanning the
    values; every value votes for each candidate within `radius`. Ties go to
    the candidate nearest the median.
    """
    values = np.sort(np.asarray(values, dtype=np.float64))
    if values.size == 0:
        raise ReconstructionError('walls', 'cannot vote on an empty segment')
    median = float(np.median(values))
    k = np.arange(np.floor((values[0] - median) / step), np.ceil((values[-1] - median) / step) + 1)
    candidates = median + step * k
    counts = np.searchsorted(values, candidates + radius, side='right') - \
        np.searchsorted(values, candidates - radius, side='left')
    best = np.lexsort((np.abs(k), -counts))[0]
    return float(candidates[best]), int(counts[best])


def voted_wall(segment, normal, radius, step, source='voted'):
    offset, votes = vote(segment.points[:, _axis(normal)], radius, step)
    return Wall(normal, offset, segment.u_start, segment.u_end, source=source, votes=votes)


def _general_walls(segments, radius, step):
    count = len(segments)
    built = {}
    order = np.argsort([segment.variance for segment in segments], kind='stable')

    for index in order:
        index = int(index)
        segment = segments[index]
        neighbors = [built[i] for i in ((index - 1) % count, (index + 1) % count) if i in built]
        normals = {wall.normal for wall in neighbors}
        natural = segment.natural_normal

        if not normals:
            built[index] = voted_wall(segment, natural, radius, step)
            continue

        between_orthogonal = len(normals) == 2
        # between orthogonal neighbors the segment continues one of them past an occlusion
        preferred = natural if between_orthogonal else other_normal(normals.pop())
        wall = voted_wall(segment, preferred, radius, step)
        alternative = voted_wall(segment, other_normal(preferred), radius, step)
        # a wall parallel to a built neighbor marks an occlusion junction
        if alternative.votes > wall.votes and (between_orthogonal or alternative.normal == natural):
            logger.info("Segment %d kept parallel to a neighbor wall", index)
            wall = alternative
        built[index] = wall

    return [built[index] for index in range(count)]


# sides of a box around the camera in longitude order, facing u = 0, pi/2, pi, -pi/2
BOX_SIDES = ((X_WALL, 1.0), (Z_WALL, 1.0), (X_WALL, -1.0), (Z_WALL, -1.0))


def facing_wall(segment, normal, sign, radius, step):
    """Wall voted from the segment points on the `sign` side of the camera, or None"""
    values = segment.points[:, _axis(normal)] * sign
    values = values[values > 0]
    if values.size == 0:
        return None
    offset, votes = vote(values, radius, step)
    if offset <= 0:
        return None
    return Wall(normal, sign * offset, segment.u_start, segment.u_end, votes=votes)


def _cuboid_walls(segments, radius, step):
    if len(segments) != 4:
        raise ReconstructionError('walls', f'cuboid needs 4 segments, got {len(segments)}')
    first = segments[0]
    middle = first.u_start + np.mod(first.u_end - first.u_start, 2 * np.pi) / 2
    # the side the first segment faces is tried first and wins ties
    starts = sorted(range(4), key=lambda s: abs(np.angle(np.exp(1j * (middle - s * np.pi / 2)))))

    best_votes, best = -1, None
    for start in starts:
        walls = [facing_wall(segment, *BOX_SIDES[(start + i) % 4], radius, step)
                 for i, segment in enumerate(segments)]
        if any(wall is None for wall in walls):
            continue
        votes = sum(wall.votes for wall in walls)
        if votes > best_votes:
            best_votes, best = votes, walls
    if best is None:
        raise ReconstructionError('walls', 'no box around the camera fits the segments')
    return best


def _junction(wall, following):
    """Hidden wall joining two parallel walls that meet at a peak"""
    u = wall.u_end
    hits = []
    for candidate in (wall, following):
        point, distance = candidate.hit(u)
        if np.isfinite(distance) and distance > 0:
            hits.append((distance, point))
    if not hits:
        raise ReconstructionError('walls', f'no wall faces the camera at u={u:.4f}')
    _, point = min(hits, key=lambda hit: hit[0])
    normal = other_normal(wall.normal)
    return Wall(normal, float(point[_axis(normal)]), u, u, source='junction')


def close_walls(walls):
    """Insert a hidden wall between every pair of consecutive parallel walls"""
    closed = []
    for i, wall in enumerate(walls):
        closed.append(wall)
        following = walls[(i + 1) % len(walls)]
        if following.normal == wall.normal:
            closed.append(_junction(wall, following))
    return closed


def wall_corners(walls):
    """(N, 2) corners where each wall meets the next one"""
    corners = []
    for i, wall in enumerate(walls):
        following = walls[(i + 1) % len(walls)]
        if following.normal == wall.normal:
            raise ReconstructionError('walls', 'consecutive walls are parallel')
        x_wall, z_wall = (wall, following) if wall.normal == X_WALL else (following, wall)
        corners.append((x_wall.offset, z_wall.offset))
    return np.array(corners, dtype=np.float64)


def build_walls(segments, force_cuboid=False, radius=Config.VOTE_RADIUS, step=Config.VOTE_STEP):
    """
    Orthogonal walls for axis-aligned segments, in peak order

    Segments are handled from the lowest residual variance up. A segment with
    no built neighbor takes its own orientation; otherwise it is forced
    perpendicular to its neighbors. Plane offsets come from point voting.
    With `force_cuboid` the four segments become the sides of a box around
    the camera, each voted only from its points on that side.
    """
    if len(segments) < 4:
        raise ReconstructionError('walls', f'need at least 4 segments, got {len(segments)}')
    if force_cuboid:
        walls = _cuboid_walls(segments, radius, step)
    else:
        walls = _general_walls(segments, radius, step)
    walls = close_walls(walls)
    logger.debug("Built %d walls (%s)", len(walls), ', '.join(
        f'{wall.normal}={wall.offset:.3f}' for wall in walls))
    return walls
