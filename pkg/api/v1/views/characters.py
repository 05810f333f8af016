#!/usr/bin/python3

"""
Character table route.
"""
from flask import request

from api.v1.views import app_views, json_response, number
from reslab import commands
from reslab.errors import InvalidInputError


@app_views.route('/characters', methods=['GET'])
def characters():
    """
    Lists the Dirichlet characters modulo q.

    Endpoint: /api/v1/characters
    Method: GET

    Request Parameters:
        - q: Odd modulus greater than 1 (query string, default 7).

    Returns: A JSON list with one row per character: label, order, parity,
        primitivity, quadraticity, conductor, |tau| and twistability.
       - 400 Bad Request: For a missing, even or out-of-range q.

    Example Usage:
        curl "http://localhost:5000/api/v1/characters?q=7"
    """
    q = number(request.args, 'q', int, 7)
    if q <= 1 or q % 2 == 0:
        raise InvalidInputError(
            f'q must be an odd integer greater than 1, got {q}.')
    return json_response(commands.character_rows(q))
