#!/usr/bin/python3

"""
The Flask application: registers the v1 blueprint, enables CORS and turns
library errors into JSON error responses.
"""
import logging

from flask import make_response, jsonify
from flask_cors import CORS

from api.v1.views import app_views, app
from reslab.errors import ReslabError

logger = logging.getLogger(__name__)

app.register_blueprint(app_views)

app.config['MAX_CONTENT_LENGTH'] = 10 * 1024 * 1024  # 10 MB
CORS(app, resources={r"/api/v1/*": {"origins": "*"}})


@app.errorhandler(ReslabError)
def handle_reslab_error(error):
    """
    Handles every library error.

    Args:
        error (ReslabError): The raised error.

    Returns:
        JSON {"error": message} with 400 for invalid input, 422 for budget
        and convergence failures.
    """
    logger.info('Request failed: %s', error)
    return jsonify({'error': str(error)}), error.http_status


@app.errorhandler(404)
def not_found(error):
    """404 Error

    responses:
        404 Not Found: requested resource (e.g., a specific URL or endpoint)
    does not exist on the server.
    """
    return make_response(jsonify({'error': "Not found"}), 404)


@app.errorhandler(405)
def method_not_allowed(error):
    """405 Error: the endpoint exists but not for this HTTP method."""
    return make_response(jsonify({'error': "Method not allowed"}), 405)


if __name__ == '__main__':
    app.run(debug=False)
