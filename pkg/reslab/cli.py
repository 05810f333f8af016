#!/usr/bin/python3

"""
Command-line interface: `reslab chars | lvalue | verify | search`.

Exit codes: 0 on success (every experiment gate passed), 1 when an
experiment fails its gate, 2 for usage errors and invalid input, 3 when a
budget is exceeded or a numerical scheme does not converge.
"""
import functools
import logging
import sys

import click

from reslab import commands
from reslab.config import resolve_config
from reslab.errors import ReslabError
from reslab.reports import (dumps_json, reports_to_csv, reports_to_jsonl,
                            rows_to_csv)

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(name)s - %(message)s'
_handlers = []


def configure_logging(level='WARNING', log_file=None):
    """
    Sends the package's log records to stderr, and to log_file if given.
    Handlers installed by an earlier call are replaced.
    """
    package_logger = logging.getLogger('reslab')
    for handler in _handlers:
        package_logger.removeHandler(handler)
        handler.close()
    _handlers.clear()
    formatter = logging.Formatter(LOG_FORMAT)
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, mode='a',
                                            encoding='utf-8'))
    for handler in handlers:
        handler.setFormatter(formatter)
        package_logger.addHandler(handler)
        _handlers.append(handler)
    package_logger.setLevel(str(level).upper())


def reslab_command(func):
    """
    Resolves the RunConfig for a subcommand, configures logging and turns
    library errors into their exit codes.
    """
    @functools.wraps(func)
    @click.pass_context
    def wrapper(ctx, **kwargs):
        flags = dict(ctx.obj or {})
        flags.update({key: kwargs.pop(key) for key in list(kwargs)
                      if key in ('q', 'X', 'theta', 'c_L', 'tol')})
        try:
            cfg = resolve_config(ctx.info_name, flags,
                                 flags.pop('config_path', None))
            configure_logging(cfg.log_level, cfg.log_file)
            code = func(cfg, **kwargs)
        except ReslabError as e:
            logger.debug('%s failed', ctx.info_name, exc_info=True)
            click.echo(f'Error: {e}', err=True)
            ctx.exit(e.exit_code)
        ctx.exit(code or 0)
    return wrapper


def emit(text, output=None):
    """Writes text to a file or to stdout."""
    if output:
        with open(output, 'w', encoding='utf-8') as stream:
            stream.write(text)
    else:
        click.echo(text, nl=False)


@click.group()
@click.option('--config', 'config_path', type=click.Path(dir_okay=False),
              help='Config file of key = value lines.')
@click.option('--threads', type=int, help='Worker processes.')
@click.option('--cache-path', help='Central-value cache file.')
@click.option('--format', 'output_format', type=click.Choice(['json', 'csv']),
              help='Output format.')
@click.option('--log-level', type=click.Choice(
    ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
    case_sensitive=False), help='Logging level (default WARNING).')
@click.option('--log-file', help='Also append log records to this file.')
@click.pass_context
def cli(ctx, **flags):
    """Central values of quadratic twists and resonance experiments."""
    ctx.obj = flags


@cli.command()
@click.option('--q', 'q', type=int, help='Odd modulus.')
@reslab_command
def chars(cfg):
    """Print the character table modulo q."""
    rows = commands.character_rows(cfg.q)
    emit(dumps_json(rows) if cfg.output_format == 'json'
         else rows_to_csv(rows))


@cli.command()
@click.option('--q', 'q', type=int, help='Odd modulus.')
@click.option('--psi-label', help='Character label, e.g. 2 or 1.3.')
@click.option('--d', 'd', type=int, required=True, help='Twist parameter.')
@click.option('--tol', 'tol', type=float, help='Absolute accuracy.')
@click.option('--method', type=click.Choice(['formula', 'oracle', 'both']),
              default='both', show_default=True)
@click.option('--no-cache', is_flag=True, help='Bypass the cache.')
@reslab_command
def lvalue(cfg, psi_label, d, method, no_cache):
    """Print the central value record for one twist."""
    cache = None if no_cache else commands.open_cache(cfg.cache_path)
    record, _ = commands.lvalue(cfg.q, psi_label, d, cfg.tol, method, cache)
    data = record.to_dict()
    emit(dumps_json(data) if cfg.output_format == 'json'
         else rows_to_csv([data]))


@cli.command()
@click.option('--experiment', required=True,
              type=click.Choice(commands.EXPERIMENTS))
@click.option('--q', 'q', type=int, help='Odd modulus.')
@click.option('--X', 'X', type=float, help='Scale: d runs over (X, 2X].')
@click.option('--X-list', 'X_list', help='Ascending scales, e.g. 250,500.')
@click.option('--u', 'u', type=int, help='Odd u for character sums.')
@click.option('--K', 'K', type=float, help='Character-sum gate constant.')
@click.option('--x', 'x', type=float, help='Prime-sum bound.')
@click.option('--psi', help='Character label.')
@click.option('--psi-prime', help='Second character label (prime-sum).')
@click.option('--psi0', help='Resonator character label.')
@click.option('--theta', 'theta', type=float, help='N = X^theta.')
@click.option('--c-L', 'c_L', type=float, help='Window constant.')
@click.option('--tol', 'tol', type=float, help='Absolute accuracy.')
@click.option('--threshold', type=float, help='Threshold (holder-bound).')
@click.option('--output', type=click.Path(dir_okay=False),
              help='Write the reports here instead of stdout.')
@reslab_command
def verify(cfg, experiment, output, **options):
    """Run an experiment; exit 1 unless every gate passes."""
    reports = commands.run_verify(experiment, cfg, options)
    emit(reports_to_jsonl(reports) if cfg.output_format == 'json'
         else reports_to_csv(reports), output)
    return 0 if all(report.passed for report in reports) else 1


@cli.command()
@click.option('--q', 'q', type=int, help='Odd modulus.')
@click.option('--coeffs', required=True,
              help="F as label=complex pairs, e.g. '2=1,4=0.5-1j'.")
@click.option('--X', 'X', type=float, help='Scale: d runs over (X, 2X].')
@click.option('--theta', 'theta', type=float, help='N = X^theta.')
@click.option('--c-L', 'c_L', type=float, help='Window constant.')
@click.option('--tol', 'tol', type=float, help='Absolute accuracy.')
@click.option('--shortlist', type=click.FloatRange(0, 1, min_open=True),
              default=1.0, show_default=True,
              help='Share of ranked d evaluated.')
@click.option('--threshold-mode', default='theorem', show_default=True,
              type=click.Choice(['theorem', 'section6', 'custom']))
@click.option('--threshold-constant', type=float, default=1 / 81,
              help='Constant used in custom mode.')
@click.option('--psi0', help='Resonator character label.')
@click.option('--output', type=click.Path(dir_okay=False),
              help='Write the result here instead of stdout.')
@reslab_command
def search(cfg, coeffs, shortlist, threshold_mode, threshold_constant, psi0,
           output):
    """Search for d with a large central value of F."""
    result = commands.run_search(cfg, coeffs, shortlist, threshold_mode,
                                 threshold_constant, psi0)
    emit(result.to_json() if cfg.output_format == 'json'
         else result.to_csv(), output)


def main(argv=None):
    """Console entry point."""
    return cli.main(args=argv, prog_name='reslab')
