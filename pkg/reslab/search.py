#!/usr/bin/python3

"""
Extreme-value search: rank the admissible d by the resonator weight
|R(d)|^2, evaluate |L(1/2, F (x) chi_{8d})| on the best-ranked share of
them, and report the d whose value clears exp(c sqrt(log X / log log X)).
"""
import json
import logging
from dataclasses import dataclass, field
from functools import partial
from math import ceil, exp, log, sqrt

import numpy as np
import pandas as pd

from reslab.central import (DEFAULT_TOL, ORACLE_CONDUCTOR_LIMIT,
                            combination_value, validate_combination)
from reslab.characters import character_from_label, fundamental_d_array
from reslab.errors import BudgetExceededError, InvalidInputError
from reslab.parallel import ordered_map
from reslab.resonator import resonator_values

logger = logging.getLogger(__name__)

THRESHOLD_CONSTANTS = {'theorem': 1 / 81, 'section6': 1 / 40}
THRESHOLD_MODES = ('theorem', 'section6', 'custom')


@dataclass(frozen=True)
class SearchConfig:
    """
    Inputs of one search.

    Attributes:
        q (int): The odd modulus.
        coeffs (tuple[tuple[str, complex], ...]): (label, c_psi) pairs of F.
        X (int): Scale; d runs over (X, 2X].
        params (ResonatorParams): Resonator schedule.
        shortlist_fraction (float): Share of ranked d that is evaluated.
        threshold_constant (float): Constant used in custom mode.
        threshold_mode (str): 'theorem' (1/81), 'section6' (1/40) or
            'custom'.
        psi0_label (str): Resonator character; by default the label with
            the largest |c_psi|, ties going to the smallest label.
        tol (float): Accuracy of each central value.
        threads (int): Worker processes for the shortlist.
    """
    q: int
    coeffs: tuple
    X: int
    params: object = field(repr=False)
    shortlist_fraction: float = 1.0
    threshold_constant: float = 1 / 81
    threshold_mode: str = 'theorem'
    psi0_label: str = None
    tol: float = DEFAULT_TOL
    threads: int = 1

    def __post_init__(self):
        if not 0 < self.shortlist_fraction <= 1:
            raise InvalidInputError('shortlist_fraction must lie in (0, 1].')
        if self.threshold_mode not in THRESHOLD_MODES:
            raise InvalidInputError(
                f"Unknown threshold mode '{self.threshold_mode}'.")
        validate_combination(self.characters())

    def characters(self):
        """F as a mapping from characters to coefficients."""
        coeffs = {}
        for label, c in self.coeffs:
            coeffs[character_from_label(self.q, label)] = complex(c)
        return coeffs

    @property
    def psi0(self):
        if self.psi0_label is not None:
            return character_from_label(self.q, self.psi0_label)
        ranked = sorted(self.characters().items(),
                        key=lambda item: (-abs(item[1]), item[0].label))
        return ranked[0][0]


def threshold(cfg, X):
    """
    exp(c sqrt(log X / log log X)) with c fixed by cfg.threshold_mode.

    Raises:
        InvalidInputError: If X < 16.
    """
    if X < 16:
        raise InvalidInputError(f'The threshold needs X >= 16, got {X}.')
    if cfg.threshold_mode == 'custom':
        c = cfg.threshold_constant
    else:
        c = THRESHOLD_CONSTANTS[cfg.threshold_mode]
    return exp(c * sqrt(log(X) / log(log(X))))


def rank_by_resonator(cfg):
    """
    Every admissible d with its weight |R(d)|^2.

    Returns:
        list[tuple[int, float]]: Sorted by weight descending, then d.
    """
    ds = fundamental_d_array(cfg.X, cfg.q)
    weights = np.abs(resonator_values(cfg.params, cfg.psi0, ds)) ** 2
    order = np.lexsort((ds, -weights))
    return [(int(ds[i]), float(weights[i])) for i in order]


@dataclass(frozen=True)
class SearchResult:
    """
    Outcome of a search.

    Attributes:
        exceedances (tuple[tuple[int, float], ...]): (d, |L_F|) above the
            threshold, largest value first.
        threshold (float): The threshold used.
        evaluated (int): Number of central values computed.
        S_size (int): Number of exceedances.
        shortlist (int): Size of the ranked shortlist.
        q (int): The modulus.
        X (int): The scale.
    """
    exceedances: tuple
    threshold: float
    evaluated: int
    S_size: int
    shortlist: int
    q: int
    X: int

    def to_dict(self):
        return {
            'q': self.q, 'X': self.X, 'threshold': self.threshold,
            'evaluated': self.evaluated, 'shortlist': self.shortlist,
            'S_size': self.S_size,
            'exceedances': [{'d': d, 'value': v}
                            for d, v in self.exceedances]}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=4) + '\n'

    def to_frame(self):
        """The exceedances as a DataFrame with columns d, value, threshold."""
        return pd.DataFrame({
            'd': [d for d, _ in self.exceedances],
            'value': [v for _, v in self.exceedances],
            'threshold': [self.threshold] * len(self.exceedances)},
            columns=['d', 'value', 'threshold'])

    def to_csv(self):
        return self.to_frame().to_csv(index=False, float_format='%.17g')


def _abs_combination(coeffs, tol, d):
    return abs(combination_value(coeffs, d, tol))


def extreme_value_search(cfg):
    """
    Runs the ranked search.

    Args:
        cfg (SearchConfig): The search inputs.

    Returns:
        SearchResult: The exceedance set on the shortlist.

    Raises:
        BudgetExceededError: If the largest conductor 16Xq is above the
            oracle limit.
        InvalidInputError: If no admissible d exists.
    """
    if 16 * cfg.X * cfg.q > ORACLE_CONDUCTOR_LIMIT:
        raise BudgetExceededError(
            f'Conductors up to {16 * cfg.X * cfg.q} exceed the oracle '
            f'limit {ORACLE_CONDUCTOR_LIMIT}.')
    bar = threshold(cfg, cfg.X)
    ranked = rank_by_resonator(cfg)
    if not ranked:
        raise InvalidInputError(
            f'The shortlist is empty: no admissible d in ({cfg.X}, '
            f'{2 * cfg.X}].')
    size = max(1, int(ceil(cfg.shortlist_fraction * len(ranked) - 1e-9)))
    shortlist = [d for d, _ in ranked[:size]]
    logger.info('Search q=%d X=%d: evaluating %d of %d d', cfg.q, cfg.X,
                size, len(ranked))
    values = ordered_map(partial(_abs_combination, cfg.characters(), cfg.tol),
                         shortlist, cfg.threads)
    exceedances = sorted(((d, v) for d, v in zip(shortlist, values)
                          if v > bar), key=lambda item: (-item[1], item[0]))
    return SearchResult(exceedances=tuple(exceedances), threshold=bar,
                        evaluated=len(shortlist), S_size=len(exceedances),
                        shortlist=size, q=cfg.q, X=cfg.X)
