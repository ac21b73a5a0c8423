from flask import Blueprint, request, jsonify
from layout.services import EncodingService

layout_bp = Blueprint('layout', __name__, url_prefix='/api/layout')


def get_service():
    """Helper function to get EncodingService instance"""
    return EncodingService()


@layout_bp.route('/encode', methods=['POST'])
def encode_annotation():
    """
    Encode a corner annotation into boundary signals

    Request Body:
        {
            "corners": [[column, ceiling_row, floor_row], ...],
            "width": 1024,          // Optional
            "c": 0.96               // Optional
        }
    """
    data = request.get_json(silent=True)

    if not data or 'corners' not in data:
        return jsonify({
            'success': False,
            'message': 'Missing required field: corners'
        }), 400

    signals, message = get_service().encode_annotation(data)

    if signals is None:
        return jsonify({
            'success': False,
            'message': message
        }), 400

    return jsonify({
        'success': True,
        'message': message,
        'signals': signals
    })


@layout_bp.route('/render', methods=['POST'])
def render_layout():
    """
    Render the exact signals of a layout

    Request Body:
        {
            "layout": {"floor_polygon": [[x, z], ...], "ceiling_height": 3.2, ...},
            "width": 1024           // Optional
        }
    """
    data = request.get_json(silent=True)

    if not data or 'layout' not in data:
        return jsonify({
            'success': False,
            'message': 'Missing required field: layout'
        }), 400

    signals, message = get_service().render_layout(data)

    if signals is None:
        return jsonify({
            'success': False,
            'message': message
        }), 400

    return jsonify({
        'success': True,
        'message': message,
        'signals': signals
    })
