import logging

import numpy as np

from config import Config
from exceptions import LayoutToolkitError
from layout.models import ManhattanLayout
from stretch.models import StretchParams
from stretch.warp import sample_stretch, stretch_layout

logger = logging.getLogger(__name__)


class StretchService:
    """Pano Stretch operations exposed over HTTP"""

    def stretch_layout(self, data):
        """
        Stretch a layout

        Args:
            data: {'layout': ManhattanLayout.to_dict(), 'k_x': float, 'k_z': float}

        Returns:
            tuple: (result dict or None, message)
        """
        try:
            params = StretchParams(float(data.get('k_x', 1.0)), float(data.get('k_z', 1.0)))
            layout = ManhattanLayout.from_dict(data['layout'])
            stretched = stretch_layout(layout, params)
        except LayoutToolkitError as e:
            logger.info("Rejected stretch request: %s", e)
            return None, str(e)
        except (KeyError, TypeError, ValueError) as e:
            return None, f'Malformed request: {e}'
        return {'params': params.to_dict(), 'layout': stretched.to_dict()}, 'Layout stretched'

    def sample(self, data):
        """
        Draw stretch factors with the training-time policy

        Args:
            data: {'seed': int, 'count': int}; bounds default to Config

        Returns:
            tuple: (list of params dicts or None, message)
        """
        try:
            rng = np.random.default_rng(data.get('seed'))
            count = int(data.get('count', 1))
            low = float(data.get('low', Config.STRETCH_MIN))
            high = float(data.get('high', Config.STRETCH_MAX))
        except (TypeError, ValueError) as e:
            return None, f'Malformed request: {e}'
        if count < 1 or not 0 < low <= high:
            return None, 'count must be positive and 0 < low <= high'

        samples = [sample_stretch(rng, low, high).to_dict() for _ in range(count)]
        return samples, f'Sampled {count} stretch factor pairs'
