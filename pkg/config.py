import os
import logging
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_float(name, default):
    value = os.environ.get(name)
    return float(value) if value else default


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


class Config:
    # Flask configuration
    CORS_ORIGINS = os.environ.get('CORS_ORIGINS') or '*'

    LOG_LEVEL = os.environ.get('LOG_LEVEL') or 'INFO'

    # Camera and panorama geometry
    CAMERA_HEIGHT = _env_float('CAMERA_HEIGHT', 1.6)
    IMAGE_WIDTH = _env_int('IMAGE_WIDTH', 1024)
    IMAGE_HEIGHT = _env_int('IMAGE_HEIGHT', 512)

    # 1D representation
    CORNER_DECAY = _env_float('CORNER_DECAY', 0.96)

    # Post-processing
    PEAK_WINDOW_DEG = _env_float('PEAK_WINDOW_DEG', 5.0)
    PEAK_THRESHOLD = _env_float('PEAK_THRESHOLD', 0.05)
    VOTE_RADIUS = _env_float('VOTE_RADIUS', 0.16)
    VOTE_STEP = _env_float('VOTE_STEP', 0.01)
    MIN_SEGMENT_COLUMNS = _env_int('MIN_SEGMENT_COLUMNS', 3)
    CUBOID_TIE_TOLERANCE = _env_float('CUBOID_TIE_TOLERANCE', 0.05)

    # Pano Stretch sampling policy
    STRETCH_MIN = _env_float('STRETCH_MIN', 1.0)
    STRETCH_MAX = _env_float('STRETCH_MAX', 2.0)
    STRETCH_FLIP_PROB = _env_float('STRETCH_FLIP_PROB', 0.5)

    # Synthetic rooms
    GENERATION_RETRIES = _env_int('GENERATION_RETRIES', 200)


def configure_logging(level=None):
    """Install a single stream handler on the root logger"""
    level = level or Config.LOG_LEVEL
    root = logging.getLogger()
    if not root.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter('%(asctime)s %(levelname)s %(name)s: %(message)s'))
        root.addHandler(handler)
    root.setLevel(level)
