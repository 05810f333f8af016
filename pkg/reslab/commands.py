#!/usr/bin/python3

"""
The operations behind both the command line and the HTTP API: character
tables, cached central values, experiment runs and searches. Inputs arrive
as plain values (often text), outputs leave as records, reports and
results ready to be serialized.
"""
import logging
import time

from reslab.cache import CacheEntry, CentralValueCache
from reslab.central import (CentralValueRecord, central_record,
                            root_number)
from reslab.characters import (character_from_label, character_group,
                               gauss_sum)
from reslab.errors import InvalidInputError
from reslab.experiments import (charsum_experiment, fourth_moment_scan,
                                holder_bound_experiment,
                                mixed_moment_experiment,
                                polya_vinogradov_experiment,
                                prime_sum_check,
                                resonator_moment_experiment)
from reslab.resonator import make_params, tuned_params
from reslab.search import SearchConfig, extreme_value_search

logger = logging.getLogger(__name__)

EXPERIMENTS = ('charsum', 'fourth-moment', 'prime-sum', 'mixed-moment',
               'resonator-moments', 'holder-bound', 'polya-vinogradov')


def character_rows(q):
    """
    One row per character modulo q, ordered by label.

    Returns:
        list[dict]: label, order, parity, primitivity, quadraticity and
            |tau(psi)|.
    """
    rows = []
    for psi in character_group(q):
        rows.append({
            'label': psi.label_text,
            'order': psi.order,
            'even': psi.is_even,
            'primitive': psi.is_primitive,
            'quadratic': psi.is_quadratic,
            'principal': psi.is_principal,
            'conductor': psi.conductor,
            'gauss_abs': abs(gauss_sum(psi, primitive=False)),
            'twistable': (psi.is_even and psi.is_primitive
                          and psi.order > 2),
        })
    return rows


def default_label(q):
    """The smallest label of an even, primitive, non-quadratic character."""
    for psi in character_group(q):
        if psi.is_even and psi.is_primitive and psi.order > 2:
            return psi.label_text
    raise InvalidInputError(
        f'No even primitive non-quadratic character exists modulo {q}.')


def resolve_character(q, label=None):
    return character_from_label(q, label or default_label(q))


def lvalue(q, psi_label, d, tol, method='both', cache=None):
    """
    A CentralValueRecord, served from the cache when it covers the request.

    Args:
        q (int): The modulus.
        psi_label (str): The character label; None picks default_label.
        d (int): The twist parameter.
        tol (float): Requested accuracy.
        method (str): 'formula', 'oracle' or 'both'.
        cache (CentralValueCache): Optional cache.

    Returns:
        tuple[CentralValueRecord, bool]: The record and whether it came from
            the cache.
    """
    psi = resolve_character(q, psi_label)
    started = time.perf_counter()
    need_oracle = method in ('oracle', 'both')
    need_formula = method in ('formula', 'both')
    if cache is not None:
        entry = cache.lookup(q, psi.label_text, d, tol, need_oracle,
                             need_formula)
        if entry is not None:
            record = CentralValueRecord(
                q=q, psi_label=psi.label_text, d=d,
                value_oracle=entry.value_oracle if need_oracle else None,
                value_sq_formula=(entry.value_sq_formula if need_formula
                                  else None),
                epsilon=root_number(psi, d), tol=entry.tol,
                clamped=entry.clamped if need_formula else False)
            logger.info('Cache hit for q=%d psi=%s d=%d (%.1f ms)', q,
                        psi.label_text, d,
                        (time.perf_counter() - started) * 1000)
            return record, True
    record = central_record(psi, d, tol, method)
    logger.info('Computed q=%d psi=%s d=%d with %s in %.1f ms', q,
                psi.label_text, d, method,
                (time.perf_counter() - started) * 1000)
    if cache is not None:
        cache.append(CacheEntry(q, psi.label_text, d, record.value_oracle,
                                record.value_sq_formula, tol,
                                record.clamped))
    return record, False


def open_cache(path):
    return CentralValueCache(path) if path else None


def parse_coeffs(text):
    """
    Parses 'label=complex,label=complex' into (label, complex) pairs.

    Both 'j' and 'i' are accepted as the imaginary unit, e.g. '2=1',
    '4=0.5-1i'.
    """
    pairs = []
    for part in (text or '').split(','):
        part = part.strip()
        if not part:
            continue
        if '=' not in part:
            raise InvalidInputError(
                f"Malformed coefficient '{part}'; expected label=value.")
        label, value = (piece.strip() for piece in part.split('=', 1))
        try:
            pairs.append((label, complex(value.replace('i', 'j')
                                         .replace(' ', ''))))
        except ValueError:
            raise InvalidInputError(
                f"Malformed coefficient value '{value}' for label "
                f"'{label}'.")
    if not pairs:
        raise InvalidInputError('No coefficients were given.')
    return tuple(pairs)


def parse_int_list(text):
    """Parses '250,500,1000' (scientific notation allowed) into ints."""
    values = []
    for part in (text or '').split(','):
        part = part.strip()
        if not part:
            continue
        try:
            number = float(part)
        except ValueError:
            raise InvalidInputError(f"'{part}' is not a number.")
        if not number.is_integer():
            raise InvalidInputError(f"'{part}' is not an integer.")
        values.append(int(number))
    return values


def resonator_params(X, theta, c_L=None):
    """make_params, or the tuned schedule when c_L is not given."""
    if c_L is None:
        return tuned_params(X, theta)
    return make_params(X, theta, c_L)


def _option(options, name, kind, default):
    """Reads one experiment flag as int or float."""
    value = options.get(name, default)
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise InvalidInputError(f"Option '{name}' must be a number, "
                                f"got '{value}'.")
    if kind is int:
        if not number.is_integer():
            raise InvalidInputError(f"Option '{name}' must be an integer, "
                                    f"got '{value}'.")
        return int(number)
    return number


def run_verify(experiment, cfg, options=None):
    """
    Runs one named experiment.

    Args:
        experiment (str): One of EXPERIMENTS.
        cfg (RunConfig): q, X, theta, c_L, tol and threads.
        options (dict): Experiment flags: u, K, X_list, x, psi, psi_prime,
            psi0, threshold.

    Returns:
        list[ExperimentReport]: The reports produced.
    """
    if experiment not in EXPERIMENTS:
        raise InvalidInputError(
            f"Unknown experiment '{experiment}'; choose one of "
            f"{', '.join(EXPERIMENTS)}.")
    options = {k: v for k, v in (options or {}).items() if v is not None}
    q, X = cfg.q, cfg.X
    if experiment == 'charsum':
        return [charsum_experiment(_option(options, 'u', int, 1), q, X,
                                   _option(options, 'K', float, 5.0))]
    if experiment == 'polya-vinogradov':
        return [polya_vinogradov_experiment(
            _option(options, 'u', int, 3), q, X)]
    psi = resolve_character(q, options.get('psi'))
    if experiment == 'fourth-moment':
        X_list = options.get('X_list', [X])
        if isinstance(X_list, str):
            X_list = parse_int_list(X_list)
        return fourth_moment_scan(psi, q, X_list, cfg.tol, cfg.threads)
    if experiment == 'prime-sum':
        psi_prime = resolve_character(q, options.get('psi_prime',
                                                     psi.label_text))
        return [prime_sum_check(psi, psi_prime,
                                _option(options, 'x', int, int(X)))]
    psi0 = resolve_character(q, options.get('psi0', psi.label_text))
    params = resonator_params(X, cfg.theta, cfg.c_L)
    if experiment == 'mixed-moment':
        return [mixed_moment_experiment(params, psi0, psi, q, X, cfg.tol,
                                        cfg.threads)]
    if experiment == 'resonator-moments':
        return resonator_moment_experiment(params, psi0, X, q)
    if experiment == 'holder-bound':
        return [holder_bound_experiment(
            params, psi0, q, X, _option(options, 'threshold', float, 1.0),
            cfg.tol, cfg.threads)]
    raise InvalidInputError(f"Experiment '{experiment}' has no runner.")


def run_search(cfg, coeffs, shortlist=1.0, threshold_mode='theorem',
               threshold_constant=1 / 81, psi0_label=None):
    """
    Builds a SearchConfig from the run settings and runs the search.

    Args:
        cfg (RunConfig): q, X, theta, c_L, tol and threads.
        coeffs (str | tuple): F as text or as (label, complex) pairs.
        shortlist (float): Share of ranked d to evaluate.
        threshold_mode (str): 'theorem', 'section6' or 'custom'.
        threshold_constant (float): Constant for custom mode.
        psi0_label (str): Resonator character.

    Returns:
        SearchResult: The search outcome.
    """
    if isinstance(coeffs, str):
        coeffs = parse_coeffs(coeffs)
    params = resonator_params(cfg.X, cfg.theta, cfg.c_L)
    search_cfg = SearchConfig(
        q=cfg.q, coeffs=tuple(coeffs), X=cfg.X, params=params,
        shortlist_fraction=shortlist, threshold_constant=threshold_constant,
        threshold_mode=threshold_mode, psi0_label=psi0_label, tol=cfg.tol,
        threads=cfg.threads)
    return extreme_value_search(search_cfg)
