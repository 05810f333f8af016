#!/usr/bin/python3

"""
Central value route, served through the same text cache as the CLI.
"""
from flask import request

from api.v1.views import app_views, json_response, number, request_config
from reslab import commands
from reslab.errors import InvalidInputError


@app_views.route('/lvalue', methods=['GET'])
def lvalue():
    """
    Computes L(1/2, psi (x) chi_{8d}) and |L|^2 for one twist.

    Endpoint: /api/v1/lvalue
    Method: GET

    Request Parameters:
        - q: Odd modulus (default 7).
        - psi: Character label, e.g. 2 or 1.3 (default: the first even
            primitive non-quadratic character).
        - d: Odd square-free twist parameter coprime to q (required).
        - tol: Absolute accuracy (default 1e-8).
        - method: formula, oracle or both (default both).

    Returns: The central value record with its discrepancy; a cached value
        gives the same body as the first computation.
       - 400 Bad Request: For invalid parameters.
       - 422 Unprocessable Entity: When the conductor is beyond the oracle
            budget or the computation does not converge.

    Example Usage:
        curl "http://localhost:5000/api/v1/lvalue?q=7&psi=2&d=1"
    """
    d = number(request.args, 'd', int)
    if d is None:
        raise InvalidInputError("Parameter 'd' is required.")
    method = request.args.get('method', 'both')
    if method not in ('formula', 'oracle', 'both'):
        raise InvalidInputError(
            f"method must be formula, oracle or both, got '{method}'.")
    cfg = request_config('lvalue', request.args)
    record, _ = commands.lvalue(cfg.q, request.args.get('psi'), d, cfg.tol,
                                method, commands.open_cache(cfg.cache_path))
    return json_response(record.to_dict())
