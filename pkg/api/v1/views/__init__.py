#!/usr/bin/python3

"""
This module defines a Flask Blueprint for handling API views
related to version 1 ("/api/v1"), plus the helpers the views share for
reading request parameters into a RunConfig.
"""
import os

from flask import Flask, Blueprint, Response

from reslab.config import resolve_config
from reslab.errors import InvalidInputError
from reslab.reports import dumps_json

app = Flask(__name__)
app.url_map.strict_slashes = False

app_views = Blueprint("app_views", __name__, url_prefix="/api/v1")

CONFIG_FIELDS = ('q', 'X', 'theta', 'c_L', 'tol', 'threads')


def number(values, name, kind=float, default=None):
    """
    Reads one numeric parameter from a mapping of request values.

    Args:
        values (Mapping): Query arguments or a JSON body.
        name (str): The parameter name.
        kind (type): int or float.
        default: Returned when the parameter is absent or empty.

    Raises:
        InvalidInputError: When the value cannot be read as `kind`.
    """
    value = values.get(name)
    if value is None or value == '':
        return default
    try:
        parsed = float(value)
    except (TypeError, ValueError):
        raise InvalidInputError(
            f"Parameter '{name}' must be a number, got '{value}'.")
    if kind is int:
        if not parsed.is_integer():
            raise InvalidInputError(
                f"Parameter '{name}' must be an integer, got '{value}'.")
        return int(parsed)
    return parsed


def request_config(command, values):
    """The RunConfig for a request: its values over the environment."""
    flags = {name: number(values, name, int if name in ('q', 'X', 'threads')
                          else float) for name in CONFIG_FIELDS}
    return resolve_config(command, flags, environ=os.environ)


def json_response(data, status=200):
    """An indented JSON body, the way every view answers."""
    return Response(dumps_json(data), status=status,
                    mimetype='application/json')


from api.v1.views import characters, lvalue, verify, search  # noqa: E402
