import logging

from config import Config
from exceptions import LayoutToolkitError
from geometry.models import ImageGrid
from layout.encoding import annotation_to_signals, render_signals
from layout.models import CornerAnnotation, ManhattanLayout

logger = logging.getLogger(__name__)


def grid_from_payload(data):
    """ImageGrid from optional 'width'/'height' request fields"""
    width = int(data.get('width', Config.IMAGE_WIDTH))
    height = int(data.get('height', width // 2))
    return ImageGrid(width, height)


class EncodingService:
    """Turns annotations and layouts into 1D boundary signals"""

    def __init__(self, c=Config.CORNER_DECAY):
        self.c = c

    def encode_annotation(self, data):
        """
        Signals for an annotation payload

        Args:
            data: {'corners': [[column, ceiling_row, floor_row], ...], 'width': W, 'height': H}

        Returns:
            tuple: (signals dict or None, message)
        """
        try:
            grid = grid_from_payload(data)
            columns, ceiling_rows, floor_rows = zip(*data['corners'])
            annotation = CornerAnnotation(columns, ceiling_rows, floor_rows, grid)
            signals = annotation_to_signals(annotation, float(data.get('c', self.c)))
        except LayoutToolkitError as e:
            logger.info("Rejected annotation: %s", e)
            return None, str(e)
        except (TypeError, ValueError) as e:
            return None, f'Malformed corners: {e}'
        return signals.to_dict(), f'Encoded {annotation.corner_count} corners'

    def render_layout(self, data):
        """
        Exact signals of a layout payload

        Args:
            data: {'layout': ManhattanLayout.to_dict(), 'width': W}

        Returns:
            tuple: (signals dict or None, message)
        """
        try:
            grid = grid_from_payload(data)
            layout = ManhattanLayout.from_dict(data['layout'])
            signals = render_signals(layout, grid, float(data.get('c', self.c)))
        except LayoutToolkitError as e:
            logger.info("Rejected layout: %s", e)
            return None, str(e)
        except (KeyError, TypeError, ValueError) as e:
            return None, f'Malformed layout: {e}'
        return signals.to_dict(), f'Rendered {layout.corner_count}-corner layout'
