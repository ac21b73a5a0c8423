from flask import Blueprint, request, jsonify
from stretch.services import StretchService

stretch_bp = Blueprint('stretch', __name__, url_prefix='/api/stretch')


def get_service():
    """Helper function to get StretchService instance"""
    return StretchService()


@stretch_bp.route('/layout', methods=['POST'])
def stretch_layout():
    """
    Stretch a layout along X and Z

    Request Body:
        {
            "layout": {"floor_polygon": [[x, z], ...], "ceiling_height": 3.2},
            "k_x": 2.0,
            "k_z": 1.0
        }
    """
    data = request.get_json(silent=True)

    if not data or 'layout' not in data:
        return jsonify({
            'success': False,
            'message': 'Missing required field: layout'
        }), 400

    result, message = get_service().stretch_layout(data)

    if result is None:
        return jsonify({
            'success': False,
            'message': message
        }), 400

    return jsonify({
        'success': True,
        'message': message,
        **result
    })


@stretch_bp.route('/sample', methods=['POST'])
def sample_params():
    """
    Sample stretch factors

    Request Body:
        {
            "seed": 7,              // Optional
            "count": 4              // Optional
        }
    """
    data = request.get_json(silent=True) or {}

    samples, message = get_service().sample(data)

    if samples is None:
        return jsonify({
            'success': False,
            'message': message
        }), 400

    return jsonify({
        'success': True,
        'message': message,
        'samples': samples
    })
