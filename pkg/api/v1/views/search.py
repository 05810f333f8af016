#!/usr/bin/python3

"""
Extreme-value search route.
"""
from flask import request

from api.v1.views import app_views, json_response, number, request_config
from reslab import commands
from reslab.errors import InvalidInputError


def read_coeffs(coeffs):
    """
    Accepts F as 'label=value,...' text, as a {label: value} object or as
    a list of [label, value] pairs; a value is a number, a complex literal
    or a {"re": .., "im": ..} object.
    """
    if isinstance(coeffs, str):
        return commands.parse_coeffs(coeffs)
    if isinstance(coeffs, dict):
        coeffs = list(coeffs.items())
    if not isinstance(coeffs, list) or not coeffs:
        raise InvalidInputError("Parameter 'coeffs' is required.")
    pairs = []
    for item in coeffs:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise InvalidInputError(f'Malformed coefficient {item!r}.')
        label, value = item
        if isinstance(value, dict):
            value = complex(number(value, 're', default=0.0),
                            number(value, 'im', default=0.0))
        elif isinstance(value, str):
            value = commands.parse_coeffs(f'{label}={value}')[0][1]
        elif isinstance(value, (int, float)) and \
                not isinstance(value, bool):
            value = complex(value)
        else:
            raise InvalidInputError(
                f"Malformed coefficient value {value!r} for label "
                f"'{label}'.")
        pairs.append((str(label), value))
    return tuple(pairs)


@app_views.route('/search', methods=['POST'])
def search():
    """
    Ranks d by the resonator and reports those whose |F(1/2, d)| clears
    the threshold.

    Endpoint: /api/v1/search
    Method: POST

    Request Body (JSON):
        - coeffs: F, e.g. "2=1,4=0.5-1j" or {"2": 1, "4": {"re": 0.5,
            "im": -1}} (required).
        - q, X, theta, c_L, tol, threads: Run settings.
        - shortlist: Share of ranked d evaluated, in (0, 1] (default 1).
        - threshold_mode: theorem, section6 or custom (default theorem).
        - threshold_constant: The constant for custom mode.
        - psi0: Resonator character label.

    Returns: The search result: exceedances, threshold, evaluated count,
        |S| and shortlist size.
       - 400 Bad Request: For invalid parameters.
       - 422 Unprocessable Entity: When the search exceeds its budget.

    Example Usage:
        curl -X POST -H "Content-Type: application/json"
        -d '{"q": 7, "X": 200, "coeffs": "2=1"}'
        http://localhost:5000/api/v1/search
    """
    body = request.get_json(silent=True)
    if not isinstance(body, dict):
        raise InvalidInputError('Invalid JSON data. Expected an object '
                                "with a 'coeffs' field.")
    shortlist = number(body, 'shortlist', default=1.0)
    if not 0 < shortlist <= 1:
        raise InvalidInputError(
            f'shortlist must lie in (0, 1], got {shortlist}.')
    mode = body.get('threshold_mode', 'theorem')
    if mode not in ('theorem', 'section6', 'custom'):
        raise InvalidInputError(f"Unknown threshold_mode '{mode}'.")
    cfg = request_config('search', body)
    result = commands.run_search(
        cfg, read_coeffs(body.get('coeffs')), shortlist, mode,
        number(body, 'threshold_constant', default=1 / 81), body.get('psi0'))
    return json_response(result.to_dict())
