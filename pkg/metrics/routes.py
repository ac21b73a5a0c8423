from flask import Blueprint, request, jsonify
from metrics.services import MetricsService

metrics_bp = Blueprint('metrics', __name__, url_prefix='/api/metrics')


def get_service():
    """Helper function to get MetricsService instance"""
    return MetricsService()


@metrics_bp.route('/evaluate', methods=['POST'])
def evaluate():
    """
    3D IoU, corner error and (with signals) pixel error

    Request Body:
        {
            "pred": {"floor_polygon": [[x, z], ...], "ceiling_height": 3.2},
            "gt": {"floor_polygon": [[x, z], ...], "ceiling_height": 3.2},
            "pred_signals": {...},  // Optional
            "gt_signals": {...}     // Optional
        }
    """
    data = request.get_json(silent=True)

    if not data or 'pred' not in data or 'gt' not in data:
        return jsonify({
            'success': False,
            'message': 'Missing required fields: pred, gt'
        }), 400

    report, message = get_service().evaluate(data)

    if report is None:
        return jsonify({
            'success': False,
            'message': message
        }), 400

    return jsonify({
        'success': True,
        'message': message,
        'metrics': report
    })
