from flask import Blueprint, request, jsonify
from postprocess.services import ReconstructionService

postprocess_bp = Blueprint('postprocess', __name__, url_prefix='/api/reconstruct')


def get_service():
    """Helper function to get ReconstructionService instance"""
    return ReconstructionService()


@postprocess_bp.route('', methods=['POST'])
def reconstruct():
    """
    Reconstruct a Manhattan layout

    Request Body:
        {
            "signals": {"y_c": [...], "y_f": [...], "y_w": [...]},
            "mode": "general"       // Optional: general | cuboid
        }
    """
    data = request.get_json(silent=True)

    if not data or 'signals' not in data:
        return jsonify({
            'success': False,
            'message': 'Missing required field: signals'
        }), 400

    result, message = get_service().reconstruct(data)

    if result is None:
        return jsonify({
            'success': False,
            'message': message
        }), 400

    return jsonify({
        'success': True,
        'message': message,
        'reconstruction': result
    })
