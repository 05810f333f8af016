#!/usr/bin/python3

"""
Central values L(1/2, psi (x) chi_{8d}) computed two independent ways.

The smoothed formula gives the squared modulus

    |L(1/2, psi (x) chi_{8d})|^2 = 2 sum_n chi_{8d}(n) d_psi(n)/sqrt(n)
                                     * V(pi n / (8dq)),

while the Hurwitz-zeta expansion over the residues modulo 8dq gives the
complex value itself. The root number ties the two together through
L = epsilon * conj(L).
"""
import logging
from dataclasses import asdict, dataclass
from functools import partial
from math import pi, sqrt

import numpy as np

from reslab.characters import (TwistSpec, d_psi_array, chi_8d_table,
                               gauss_sum, kronecker, require_twistable)
from reslab.errors import (BudgetExceededError, ConvergenceError,
                           InvalidInputError)
from reslab.parallel import ordered_map
from reslab.specialfn import hurwitz_zeta, v_cutoff, v_weight_grid

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
ORACLE_CONDUCTOR_LIMIT = 10 ** 6
METHODS = ('formula', 'oracle', 'both')


@dataclass(frozen=True)
class FormulaEvaluation:
    """
    One evaluation of the smoothed |L|^2 series.

    Attributes:
        value (float): The reported value (clamped to 0 when needed).
        raw (float): The series sum before clamping.
        clamped (bool): True when raw fell in [-tol, 0).
        n_terms (int): Number of series terms used.
    """
    value: float
    raw: float
    clamped: bool
    n_terms: int


@dataclass(frozen=True)
class CentralValueRecord:
    """
    Central value data for one twist, as printed, cached and served.

    Fields the chosen method did not compute are None.
    """
    q: int
    psi_label: str
    d: int
    value_oracle: complex = None
    value_sq_formula: float = None
    epsilon: complex = None
    tol: float = DEFAULT_TOL
    clamped: bool = False

    @property
    def discrepancy(self):
        """| |oracle|^2 - formula |, or None unless both are present."""
        if self.value_oracle is None or self.value_sq_formula is None:
            return None
        return abs(abs(self.value_oracle) ** 2 - self.value_sq_formula)

    def to_dict(self):
        """A JSON-ready dictionary with complex numbers split in two."""
        data = asdict(self)
        for key in ('value_oracle', 'epsilon'):
            value = data.pop(key)
            data[f'{key}_re'] = None if value is None else value.real
            data[f'{key}_im'] = None if value is None else value.imag
        data['discrepancy'] = self.discrepancy
        return data


def agreement_tolerance(value_sq):
    """The accepted gap between the two paths for a squared value."""
    return max(1e-6 * abs(value_sq), 1e-8)


def _twist(psi, d):
    require_twistable(psi)
    return TwistSpec(psi, d)


def root_number(psi, d):
    """
    The root number epsilon(d) = psi(8d) (8d/q) tau(psi) / sqrt(q).

    Args:
        psi (DirichletCharacter): Even, primitive, non-quadratic.
        d (int): Odd, square-free, coprime to 2q.

    Returns:
        complex: A number of modulus 1.

    Raises:
        InvalidInputError: If psi or d violates the preconditions.
    """
    twist = _twist(psi, d)
    q = psi.modulus
    return psi(8 * twist.d) * kronecker(8 * twist.d, q) * gauss_sum(psi) \
        / sqrt(q)


def d_psi_prefix(psi, N):
    """d_psi(0..N), sliced from a power-of-two table kept in the cache."""
    return d_psi_array(psi, 1 << max(N, 1).bit_length())[:N + 1]


def evaluate_formula(psi, d, tol=DEFAULT_TOL, n_terms=None):
    """
    Sums the smoothed series for |L(1/2, psi (x) chi_{8d})|^2.

    Args:
        psi (DirichletCharacter): Even, primitive, non-quadratic.
        d (int): Odd, square-free, coprime to 2q.
        tol (float): Absolute accuracy; the series stops at
            v_cutoff(dq, tol/2).
        n_terms (int): Explicit truncation, overriding the cutoff.

    Returns:
        FormulaEvaluation: The value together with its diagnostics.

    Raises:
        ConvergenceError: If the sum is below -tol.
    """
    twist = _twist(psi, d)
    dq = twist.d * psi.modulus
    N = n_terms if n_terms is not None else v_cutoff(dq, tol / 2)
    n = np.arange(1, N + 1, dtype=np.int64)
    chi = chi_8d_table(twist.d)[n % (8 * twist.d)]
    coefficients = d_psi_prefix(psi, N)[1:]
    weights = v_weight_grid(pi / (8 * dq), N)
    raw = 2.0 * float(np.sum(chi * coefficients / np.sqrt(n) * weights))
    logger.debug('|L|^2 formula: q=%d psi=%s d=%d terms=%d value=%.17g',
                 psi.modulus, psi.label_text, twist.d, N, raw)
    if raw < -tol:
        raise ConvergenceError(
            f'|L|^2 came out as {raw:.3e}, below -tol = {-tol:.1e}.')
    if raw < 0:
        logger.warning('Clamped |L|^2 = %.3e to 0 for psi=%s d=%d',
                       raw, psi.label_text, twist.d)
        return FormulaEvaluation(0.0, raw, True, N)
    return FormulaEvaluation(raw, raw, False, N)


def central_value_squared(psi, d, tol=DEFAULT_TOL):
    """|L(1/2, psi (x) chi_{8d})|^2 from the smoothed formula."""
    return evaluate_formula(psi, d, tol).value


def central_values_squared(psi, ds, tol=DEFAULT_TOL, threads=1):
    """
    Evaluates the formula for many d.

    Returns:
        numpy.ndarray: Values in the order of ds.
    """
    func = partial(central_value_squared, psi, tol=tol)
    return np.array(ordered_map(func, [int(d) for d in ds], threads),
                    dtype=np.float64)


def oracle_central_value(psi, d, tol=DEFAULT_TOL):
    """
    L(1/2, psi (x) chi_{8d}) from the Hurwitz zeta function:

        k^{-1/2} sum_{a=1}^{k} (psi chi_{8d})(a) zeta(1/2, a/k),  k = 8dq.

    Args:
        psi (DirichletCharacter): Even, primitive, non-quadratic.
        d (int): Odd, square-free, coprime to 2q.
        tol (float): Each Hurwitz value is computed to tol/k.

    Returns:
        complex: The central value.

    Raises:
        BudgetExceededError: If the conductor 8dq exceeds 10^6.
    """
    twist = _twist(psi, d)
    k = twist.conductor
    if k > ORACLE_CONDUCTOR_LIMIT:
        raise BudgetExceededError(
            f'Conductor {k} is above the oracle limit '
            f'{ORACLE_CONDUCTOR_LIMIT}.')
    a = np.arange(1, k + 1, dtype=np.int64)
    coefficients = twist.values(a)
    units = coefficients != 0
    zeta = hurwitz_zeta(0.5, a[units] / k, tol=tol / k)
    return complex(np.sum(coefficients[units] * zeta)) / sqrt(k)


def functional_equation_residual(psi, d, tol=DEFAULT_TOL):
    """|L - epsilon(d) conj(L)| at the central point."""
    value = oracle_central_value(psi, d, tol)
    return abs(value - root_number(psi, d) * value.conjugate())


def combination_value(coeffs, d, tol=DEFAULT_TOL):
    """
    L(1/2, F (x) chi_{8d}) for F = sum_psi c_psi psi.

    Args:
        coeffs (Mapping[DirichletCharacter, complex]): The combination F.
        d (int): The twist parameter.
        tol (float): Accuracy passed to each oracle evaluation.

    Returns:
        complex: sum_psi c_psi L(1/2, psi (x) chi_{8d}).

    Raises:
        InvalidInputError: If the combination is empty, all zero or mixes
            moduli.
    """
    validate_combination(coeffs)
    return sum(complex(c) * oracle_central_value(psi, d, tol)
               for psi, c in sorted(coeffs.items(),
                                    key=lambda item: item[0].label)
               if c != 0)


def validate_combination(coeffs):
    """Checks that coeffs is a usable combination F."""
    if not coeffs or all(c == 0 for c in coeffs.values()):
        raise InvalidInputError('The combination F has no nonzero '
                                'coefficient.')
    moduli = {psi.modulus for psi in coeffs}
    if len(moduli) > 1:
        raise InvalidInputError(
            f'The combination mixes moduli {sorted(moduli)}.')
    for psi in coeffs:
        require_twistable(psi)


def central_record(psi, d, tol=DEFAULT_TOL, method='both'):
    """
    Builds the CentralValueRecord for one twist.

    Args:
        psi (DirichletCharacter): The character.
        d (int): The twist parameter.
        tol (float): Accuracy for both paths.
        method (str): 'formula', 'oracle' or 'both'.

    Returns:
        CentralValueRecord: With the root number always filled in.
    """
    if method not in METHODS:
        raise InvalidInputError(
            f"method must be one of {', '.join(METHODS)}, got '{method}'.")
    epsilon = root_number(psi, d)
    oracle = formula = None
    clamped = False
    if method in ('oracle', 'both'):
        oracle = oracle_central_value(psi, d, tol)
    if method in ('formula', 'both'):
        evaluation = evaluate_formula(psi, d, tol)
        formula, clamped = evaluation.value, evaluation.clamped
    return CentralValueRecord(q=psi.modulus, psi_label=psi.label_text,
                              d=int(d), value_oracle=oracle,
                              value_sq_formula=formula, epsilon=epsilon,
                              tol=tol, clamped=clamped)
