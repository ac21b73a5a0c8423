import logging

from exceptions import LayoutToolkitError, ReconstructionError
from layout.models import BoundarySignals
from postprocess.pipeline import MODES, reconstruct_detailed

logger = logging.getLogger(__name__)


class ReconstructionService:
    """Layout reconstruction exposed over HTTP"""

    def reconstruct(self, data):
        """
        Reconstruct a layout from boundary signals

        Args:
            data: {'signals': {'y_c': [...], 'y_f': [...], 'y_w': [...]}, 'mode': 'general'|'cuboid'}

        Returns:
            tuple: (reconstruction dict or None, message)
        """
        mode = data.get('mode', 'general')
        if mode not in MODES:
            return None, f"mode must be one of {', '.join(MODES)}"
        try:
            signals = BoundarySignals.from_dict(data['signals'])
            options = {}
            if 'camera_height' in data:
                options['camera_height'] = float(data['camera_height'])
            result = reconstruct_detailed(signals, mode, **options)
        except ReconstructionError as e:
            logger.info("Reconstruction failed at %s: %s", e.stage, e.message)
            return None, str(e)
        except LayoutToolkitError as e:
            return None, str(e)
        except (KeyError, TypeError, ValueError) as e:
            return None, f'Malformed signals: {e}'
        return result.to_dict(), f'Reconstructed {result.layout.corner_count}-corner layout'
