from flask import Flask, jsonify
from flask_cors import CORS
from config import Config, configure_logging
from layout.routes import layout_bp
from stretch.routes import stretch_bp
from postprocess.routes import postprocess_bp
from metrics.routes import metrics_bp


def create_app(config_object=Config):
    """Build the Flask application"""
    configure_logging(config_object.LOG_LEVEL)

    app = Flask(__name__)
    app.config.from_object(config_object)

    CORS(app, resources={
        r"/api/*": {
            "origins": config_object.CORS_ORIGINS,
            "methods": ["GET", "POST", "OPTIONS"],
            "allow_headers": ["Content-Type"],
            "expose_headers": ["Content-Type"],
            "max_age": 3600
        }
    })

    # Register API blueprints
    app.register_blueprint(layout_bp)
    app.register_blueprint(stretch_bp)
    app.register_blueprint(postprocess_bp)
    app.register_blueprint(metrics_bp)

    @app.route('/health')
    def health():
        """Liveness check"""
        return jsonify({'success': True, 'status': 'ok'})

    @app.errorhandler(404)
    def not_found(error):
        """404 error handler"""
        return jsonify({'success': False, 'message': 'Resource not found'}), 404

    @app.errorhandler(405)
    def method_not_allowed(error):
        """405 error handler"""
        return jsonify({'success': False, 'message': 'Method not allowed'}), 405

    @app.errorhandler(500)
    def internal_error(error):
        """500 error handler"""
        return jsonify({'success': False, 'message': 'Internal server error'}), 500

    return app


app = create_app()

if __name__ == '__main__':
    app.run(debug=True, host='0.0.0.0', port=5000)
