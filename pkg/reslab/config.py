#!/usr/bin/python3

"""
Run configuration. Every setting comes from a command-line flag, a config
file line, a RESLAB_<KEY> environment variable or a documented default, in
that order of precedence. RESLAB_CACHE is the exception: it overrides the
cache path whatever else is given.

The config file holds `key = value` lines; `#` starts a comment and blank
lines are skipped.
"""
import logging
import os
from dataclasses import dataclass, fields, replace

from reslab.errors import InvalidInputError

logger = logging.getLogger(__name__)

CACHE_ENV = 'RESLAB_CACHE'
ENV_PREFIX = 'RESLAB_'
OUTPUT_FORMATS = ('json', 'csv')
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


def type_cast(value):
    """
    Tries to convert the given text into an integer, float, boolean or None,
    and returns the converted value. If no conversion applies, the stripped
    text is returned.

    Args:
        value (str): The text to be typecasted.

    Returns:
        The converted value if successful, otherwise the original text.
    """
    value = value.strip()
    try:
        return int(value)
    except ValueError:
        pass

    try:
        return float(value)
    except ValueError:
        pass

    if value.lower() == "true":
        return True
    elif value.lower() == "false":
        return False

    if value == "" or value.lower() == "none":
        return None

    if len(value) > 1 and value[0] == value[-1] and value[0] in "'\"":
        return value[1:-1]
    return value


@dataclass(frozen=True)
class RunConfig:
    """
    Settings shared by every command.

    Attributes:
        command (str): The subcommand being run.
        q (int): Odd modulus.
        X (int): Discriminant scale.
        theta (float): Resonator exponent, N = X^theta.
        c_L (float): Resonator window constant; unset picks the smallest
            non-degenerate window.
        tol (float): Absolute accuracy of central values.
        threads (int): Worker processes.
        cache_path (str): Central-value cache file.
        output_format (str): 'json' or 'csv'.
        log_level (str): Logging level name.
        log_file (str): Optional log file.
    """
    command: str = None
    q: int = 7
    X: int = 1000
    theta: float = 1 / 3
    c_L: float = None
    tol: float = 1e-8
    threads: int = 1
    cache_path: str = 'reslab_cache.txt'
    output_format: str = 'json'
    log_level: str = 'WARNING'
    log_file: str = None

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q <= 1 or self.q % 2 == 0:
            raise InvalidInputError(
                f'q must be an odd integer greater than 1, got {self.q}.')
        if not isinstance(self.threads, int) or self.threads < 1:
            raise InvalidInputError(
                f'threads must be an integer >= 1, got {self.threads}.')
        if not isinstance(self.X, int) or self.X < 1:
            raise InvalidInputError(f'X must be a positive integer, got '
                                    f'{self.X}.')
        for name in ('theta', 'c_L', 'tol'):
            value = getattr(self, name)
            if name == 'c_L' and value is None:
                continue
            if not isinstance(value, (int, float)):
                raise InvalidInputError(
                    f'{name} must be a number, got {getattr(self, name)!r}.')
        if not 0 < self.tol < 1:
            raise InvalidInputError(f'tol must lie in (0, 1), got {self.tol}.')
        if self.output_format not in OUTPUT_FORMATS:
            raise InvalidInputError(
                f"output_format must be json or csv, got "
                f"'{self.output_format}'.")
        if str(self.log_level).upper() not in LOG_LEVELS:
            raise InvalidInputError(f"Unknown log level '{self.log_level}'.")


CONFIG_KEYS = tuple(f.name for f in fields(RunConfig) if f.name != 'command')


def parse_config_text(text, source='<config>'):
    """
    Parses `key = value` lines.

    Args:
        text (str): The file contents.
        source (str): Name used in error messages.

    Returns:
        dict: Typecast values by key.

    Raises:
        InvalidInputError: For a malformed line or an unknown key, naming
            the line.
    """
    settings = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise InvalidInputError(
                f"Invalid config file {source}. Expected 'key = value' at "
                f"line {line_number}.")
        key, value = (part.strip() for part in line.split('=', 1))
        key = key.replace('-', '_')
        if key not in CONFIG_KEYS:
            raise InvalidInputError(
                f"Invalid config file {source}. Unknown key '{key}' at line "
                f"{line_number}.")
        settings[key] = type_cast(value)
    return settings


def load_config_file(path):
    """Reads and parses a config file."""
    try:
        with open(path, 'r', encoding='utf-8') as config_file:
            return parse_config_text(config_file.read(), path)
    except OSError as e:
        raise InvalidInputError(f'Cannot read config file {path}: {e}')


def _coerce(key, value):
    if value is None:
        return None
    kind = {f.name: f.type for f in fields(RunConfig)}[key]
    try:
        if kind is int and isinstance(value, float) and value.is_integer():
            return int(value)
        if kind is float and isinstance(value, int):
            return float(value)
        if kind is str:
            return str(value)
    except (TypeError, ValueError):
        pass
    return value


def resolve_config(command, flags=None, config_path=None, environ=None):
    """
    Merges every configuration source into one RunConfig.

    Args:
        command (str): The subcommand.
        flags (dict): Values given on the command line; None means unset.
        config_path (str): Optional config file.
        environ (Mapping): Environment, defaults to os.environ.

    Returns:
        RunConfig: The resolved settings.
    """
    environ = os.environ if environ is None else environ
    settings = {}
    for key in CONFIG_KEYS:
        name = ENV_PREFIX + key.upper()
        if name in environ and name != CACHE_ENV:
            settings[key] = type_cast(environ[name])
    if config_path:
        settings.update(load_config_file(config_path))
    for key, value in (flags or {}).items():
        if value is not None and key in CONFIG_KEYS:
            settings[key] = value
    if environ.get(CACHE_ENV):
        settings['cache_path'] = environ[CACHE_ENV]
    settings = {key: _coerce(key, value) for key, value in settings.items()
                if value is not None}
    logger.debug('Resolved configuration for %s: %s', command, settings)
    return replace(RunConfig(), command=command, **settings)
