#!/usr/bin/python3

"""
Experiment route.
"""
from flask import request

from api.v1.views import app_views, json_response, request_config
from reslab import commands
from reslab.errors import InvalidInputError
from reslab.reports import clean

OPTIONS = ('u', 'K', 'X_list', 'x', 'psi', 'psi_prime', 'psi0', 'threshold')


@app_views.route('/verify/<experiment>', methods=['POST'])
def verify(experiment):
    """
    Runs one experiment and returns its reports.

    Endpoint: /api/v1/verify/<experiment>
    Method: POST

    Request Body (JSON, optional):
        - q, X, theta, c_L, tol, threads: Run settings.
        - u, K, X_list, x, psi, psi_prime, psi0, threshold: Experiment
            options, as for `reslab verify`.

    Returns: {"reports": [...], "pass": true|false}. A failed gate is still
        a 200 response; "pass" tells whether every gate held.
       - 400 Bad Request: Unknown experiment or invalid parameters.
       - 422 Unprocessable Entity: Budget exceeded or no convergence.

    Example Usage:
        curl -X POST -H "Content-Type: application/json"
        -d '{"u": 1, "X": 100000}'
        http://localhost:5000/api/v1/verify/charsum
    """
    if experiment not in commands.EXPERIMENTS:
        raise InvalidInputError(
            f"Unknown experiment '{experiment}'; choose one of "
            f"{', '.join(commands.EXPERIMENTS)}.")
    body = request.get_json(silent=True)
    if body is None:
        body = {}
    if not isinstance(body, dict):
        raise InvalidInputError('Invalid JSON data. Expected an object.')
    cfg = request_config('verify', body)
    options = {name: body.get(name) for name in OPTIONS}
    reports = commands.run_verify(experiment, cfg, options)
    return json_response({
        'reports': [clean(report.to_dict()) for report in reports],
        'pass': all(report.passed for report in reports)})
