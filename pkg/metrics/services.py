import logging

from exceptions import LayoutToolkitError
from layout.models import BoundarySignals, ManhattanLayout
from layout.services import grid_from_payload
from metrics.evaluation import evaluate

logger = logging.getLogger(__name__)


class MetricsService:
    """Layout evaluation exposed over HTTP"""

    def evaluate(self, data):
        """
        Compare a predicted layout with ground truth

        Args:
            data: {'pred': layout dict, 'gt': layout dict, 'width': W,
                   'pred_signals': signals dict, 'gt_signals': signals dict}

        Returns:
            tuple: (report dict or None, message)
        """
        try:
            grid = grid_from_payload(data)
            pred = ManhattanLayout.from_dict(data['pred'])
            gt = ManhattanLayout.from_dict(data['gt'])
            pred_sig = gt_sig = None
            if 'pred_signals' in data and 'gt_signals' in data:
                pred_sig = BoundarySignals.from_dict(data['pred_signals'])
                gt_sig = BoundarySignals.from_dict(data['gt_signals'])
            report = evaluate(pred, gt, grid, pred_sig, gt_sig)
        except LayoutToolkitError as e:
            logger.info("Rejected evaluation request: %s", e)
            return None, str(e)
        except (KeyError, TypeError, ValueError) as e:
            return None, f'Malformed request: {e}'
        return report.to_dict(), 'Evaluated'
