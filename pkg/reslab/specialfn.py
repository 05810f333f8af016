#!/usr/bin/python3

"""
Special functions behind the central-value formulas: the smooth weight

    V(x) = 1/(2 pi i) * integral over Re s = c of
           (Gamma(s/2 + 1/4) / Gamma(1/4))^2 x^{-s} ds / s,

its truncation point for the series it weights, and the Hurwitz zeta
function used by the independent L-value computation.

A single V(x) is computed on the vertical contour. Whole grids V(h n) are
computed from the equivalent real integral

    V(x) = 4 / Gamma(1/4)^2 * integral_x^inf y^{-1/2} K_0(2y) dy,

which turns a grid into one reverse cumulative sum of Gauss-Legendre panels.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import ceil, exp, isfinite, log, pi

import numpy as np
from scipy import integrate, special

from reslab.errors import ConvergenceError, InvalidInputError, PoleError
from reslab.sieve import divisor_counts

logger = logging.getLogger(__name__)

LOG_GAMMA_QUARTER = float(special.gammaln(0.25))
K0_NORMALIZATION = 4.0 / special.gamma(0.25) ** 2
V_GRID_CUTOFF = 60.0
CONTOUR_CAP = 40.0
CUTOFF_EXACT_LIMIT = 10 ** 6
GRID_CHUNK = 1 << 18
GAUSS_ORDER = 8
EPS = float(np.finfo(np.float64).eps)
LOG_2 = log(2.0)
LOG_2PI = log(2.0 * pi)
REFLECTION_BELOW = -2.0
REFLECTION_TERMS = 2 * 10 ** 6
MAX_LOG_SCALE = 700.0


@dataclass(frozen=True)
class QuadratureConfig:
    """
    Parameters of the vertical-line quadrature for V(x).

    Attributes:
        contour_re (float): Abscissa c > 1/2 used for 1 <= x; larger x shift
            the line to c = x (capped at 40).
        t_max (float): The line is truncated to |Im s| <= t_max.
        step (float): Trapezoid step along the line.
        tol (float): Accepted disagreement between the two refinements.
    """
    contour_re: float = 1.0
    t_max: float = 200.0
    step: float = 0.05
    tol: float = 1e-8

    def __post_init__(self):
        if not self.contour_re > 0.5:
            raise InvalidInputError('contour_re must exceed 1/2.')
        if self.step <= 0 or self.t_max <= 0 or self.tol <= 0:
            raise InvalidInputError(
                'step, t_max and tol must all be positive.')
        panels = self.t_max / self.step
        if abs(panels - round(panels)) > 1e-9 * max(1.0, panels):
            raise InvalidInputError(
                't_max must be an integer number of steps.')

    def refined(self):
        """The check configuration: half the step, twice the line."""
        return QuadratureConfig(self.contour_re, 2 * self.t_max,
                                self.step / 2, self.tol)


DEFAULT_QUADRATURE = QuadratureConfig()


def complex_loggamma(s):
    """
    The principal branch of log Gamma(s) for complex s.

    Args:
        s (complex | numpy.ndarray): Argument(s) away from the poles.

    Returns:
        complex | numpy.ndarray: log Gamma(s), continuous off the negative
            real axis.
    """
    return special.loggamma(np.asarray(s, dtype=np.complex128))


def contour_abscissa(x, cfg=DEFAULT_QUADRATURE):
    """
    Chooses the line Re s = c for V(x).

    For x >= 1 the line moves right to c = max(contour_re, x), capped at 40,
    turning x^{-c} into decay. For small x the integrand grows like x^{-c},
    so below e^{-2} the line moves left to c = 1/2 + 1/|log x|, which keeps
    x^{-c} within a factor e of x^{-1/2}.
    """
    if x >= 1.0:
        return min(max(cfg.contour_re, x), CONTOUR_CAP)
    if x < exp(-2.0):
        return min(cfg.contour_re, 0.5 + 1.0 / abs(log(x)))
    return cfg.contour_re


def _line_integral(x, c, cfg):
    t = np.linspace(-cfg.t_max, cfg.t_max,
                    int(round(2 * cfg.t_max / cfg.step)) + 1)
    s = c + 1j * t
    log_kernel = 2.0 * (complex_loggamma(s / 2 + 0.25) - LOG_GAMMA_QUARTER)
    integrand = np.exp(log_kernel - s * log(x)) / s
    return complex(integrate.trapezoid(integrand, t)) / (2 * pi)


def v_weight_raw(x, cfg=DEFAULT_QUADRATURE):
    """
    Evaluates the contour integral for V(x) at two refinements.

    Returns:
        tuple[complex, complex]: The quadrature at cfg and at cfg.refined().
    """
    c = contour_abscissa(x, cfg)
    return _line_integral(x, c, cfg), _line_integral(x, c, cfg.refined())


@lru_cache(maxsize=4096)
def _v_weight(x, cfg):
    coarse, fine = v_weight_raw(x, cfg)
    delta = abs(fine - coarse)
    logger.debug('V(%r): refinement delta %.3e', x, delta)
    if delta > cfg.tol:
        raise ConvergenceError(
            f'V({x}) did not settle: refinements differ by {delta:.3e}.')
    if abs(fine.imag) > cfg.tol:
        raise ConvergenceError(
            f'V({x}) has imaginary part {fine.imag:.3e} above tolerance.')
    return fine.real


def v_weight(x, cfg=DEFAULT_QUADRATURE):
    """
    Computes the weight V(x) by quadrature on a vertical line.

    Args:
        x (float): Non-negative argument.
        cfg (QuadratureConfig): Line position and quadrature parameters.

    Returns:
        float: V(x); exactly 1.0 at x = 0.

    Raises:
        InvalidInputError: If x is negative or not finite.
        ConvergenceError: If the refined quadrature moves by more than
            cfg.tol or leaves a non-negligible imaginary part.
    """
    x = float(x)
    if not isfinite(x) or x < 0:
        raise InvalidInputError(f'V(x) needs finite x >= 0, got {x}.')
    if x == 0.0:
        return 1.0
    return _v_weight(x, cfg)


def _k0_integrand(y):
    return special.k0(2.0 * y) / np.sqrt(y)


def v_weight_tail(x):
    """V(x) from the K_0 integral, for a single x > 0."""
    if x > V_GRID_CUTOFF:
        return 0.0
    value, _ = integrate.quad(_k0_integrand, x, np.inf, limit=200,
                              epsabs=1e-16, epsrel=1e-13)
    return K0_NORMALIZATION * value


def v_weight_grid(h, count):
    """
    Tabulates V(h n) for n = 1, ..., count.

    Each panel [h n, h (n + 1)] is integrated with 8-point Gauss-Legendre;
    a reverse cumulative sum of the panels plus one adaptive tail integral
    gives every grid value. Grid points beyond x = 60 are set to 0.

    Args:
        h (float): Grid spacing, positive.
        count (int): Number of grid points.

    Returns:
        numpy.ndarray: float64 array of length count.
    """
    if h <= 0 or count < 0:
        raise InvalidInputError('v_weight_grid needs h > 0 and count >= 0.')
    values = np.zeros(count, dtype=np.float64)
    live = min(count, int(V_GRID_CUTOFF / h))
    if live == 0:
        return values
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_ORDER)
    offsets = (nodes + 1.0) / 2.0
    panels = np.empty(live, dtype=np.float64)
    for start in range(0, live, GRID_CHUNK):
        n = np.arange(start + 1, min(start + GRID_CHUNK, live) + 1,
                      dtype=np.float64)
        y = h * (n[:, None] + offsets[None, :])
        panels[start:start + len(n)] = (
            _k0_integrand(y) @ weights) * (h / 2.0)
    values[:live] = K0_NORMALIZATION * np.cumsum(panels[::-1])[::-1] \
        + v_weight_tail(h * (live + 1))
    return values


def _closed_tail(a, N):
    return 2.0 * exp(-a * (N + 1)) / -np.expm1(-a)


@lru_cache(maxsize=256)
def v_cutoff(dq, tol):
    """
    Finds where the series sum_n d_psi(n)/sqrt(n) V(pi n/(8dq)) may stop.

    The tail is bounded by 2 sum_{n > N} sigma_0(n)/sqrt(n) e^{-a n} with
    a = pi/(16 dq). Up to 10^6 the divisor counts are exact; beyond that
    sigma_0(n) <= sqrt(n) leaves a geometric series.

    Args:
        dq (int): The product d*q.
        tol (float): Target tail size, 0 < tol < 1.

    Returns:
        int: The smallest N whose tail bound is below tol.
    """
    if dq < 1:
        raise InvalidInputError(f'dq must be positive, got {dq}.')
    if not 0 < tol < 1:
        raise InvalidInputError(f'tol must lie in (0, 1), got {tol}.')
    a = pi / (16.0 * dq)
    limit_tail = _closed_tail(a, CUTOFF_EXACT_LIMIT)
    if limit_tail >= tol:
        bound = log(2.0 / (tol * -np.expm1(-a))) / a - 1.0
        return max(CUTOFF_EXACT_LIMIT, int(ceil(bound)))
    n = np.arange(1, CUTOFF_EXACT_LIMIT + 1, dtype=np.float64)
    terms = 2.0 * divisor_counts(CUTOFF_EXACT_LIMIT)[1:] / np.sqrt(n) \
        * np.exp(-a * n)
    # tails[k] bounds the sum over n > k, for k = 0..limit
    tails = np.append(np.cumsum(terms[::-1])[::-1], 0.0) + limit_tail
    return max(1, int(np.argmax(tails < tol)))


def cutoff_tail_bound(dq, N):
    """The tail bound v_cutoff certifies, evaluated at N directly."""
    a = pi / (16.0 * dq)
    if N >= CUTOFF_EXACT_LIMIT:
        return _closed_tail(a, N)
    n = np.arange(N + 1, CUTOFF_EXACT_LIMIT + 1, dtype=np.float64)
    counts = divisor_counts(CUTOFF_EXACT_LIMIT)[N + 1:]
    return float(np.sum(2.0 * counts / np.sqrt(n) * np.exp(-a * n))) \
        + _closed_tail(a, CUTOFF_EXACT_LIMIT)


@lru_cache(maxsize=1)
def _euler_maclaurin_coefficients(max_order):
    k = np.arange(1, max_order + 1)
    bernoulli = special.bernoulli(2 * max_order)
    return bernoulli[2 * k] / special.factorial(2 * k)


def hurwitz_zeta(s, a, tol=1e-12, max_order=60, chunk=1 << 15):
    """
    The Hurwitz zeta function zeta(s, a) = sum_{n >= 0} (n + a)^{-s}.

    For Re s >= -2, M terms are summed directly, then the Euler-Maclaurin
    tail

        (M+a)^{1-s}/(s-1) + (M+a)^{-s}/2
        + sum_k B_{2k}/(2k)! s(s+1)...(s+2k-2) (M+a)^{-s-2k+1}

    is added until the remainder bound |T_k| |s+2k+1| / (Re s + 2k + 1)
    drops below tol. Further left the direct terms grow like (M+a)^{-Re s}
    and cancel, so the value comes from the functional equation

        zeta(1-w, a) = 2 Gamma(w) / (2 pi)^w
                       * sum_{n >= 1} cos(2 pi n a - pi w / 2) / n^w

    with w = 1 - s, applied to the fractional part of a.

    The accuracy target is tol * max(1, |zeta(s, a)|): absolute for values
    of moderate size, relative for the very large values that occur far
    left of the critical strip.

    Args:
        s (complex): Any s != 1.
        a (float | array_like): Shift parameter(s), each > 0.
        tol (float): Accuracy target.
        max_order (int): Largest number of Bernoulli terms.
        chunk (int): Number of shifts processed per vectorized block.

    Returns:
        complex | numpy.ndarray: zeta(s, a), shaped like a.

    Raises:
        PoleError: At s = 1.
        InvalidInputError: If some a <= 0.
        ConvergenceError: If the remainder bound is still above tol after
            max_order terms, if rounding in the summed terms alone exceeds
            the target, or if the reflected series would need more than
            REFLECTION_TERMS terms.
    """
    s = complex(s)
    if s == 1:
        raise PoleError('The Hurwitz zeta function has a pole at s = 1.')
    shifts = np.asarray(a, dtype=np.float64)
    if np.any(shifts <= 0):
        raise InvalidInputError('Hurwitz zeta needs a > 0.')
    block = _hurwitz_reflected if s.real < REFLECTION_BELOW \
        else _hurwitz_block
    flat = shifts.ravel()
    out = np.empty(flat.shape, dtype=np.complex128)
    for start in range(0, len(flat), chunk):
        out[start:start + chunk] = block(
            s, flat[start:start + chunk], tol, max_order)
    if shifts.ndim == 0:
        return complex(out[0])
    return out.reshape(shifts.shape)


def _hurwitz_block(s, a, tol, max_order):
    if s.real < 0:
        M = 8 + int(ceil(abs(s) / pi))
    else:
        M = 20 + int(ceil(abs(s)))
    direct = np.arange(M, dtype=np.float64)[:, None] + a[None, :]
    log_direct = np.log(direct)
    total = np.exp(-s * log_direct).sum(axis=0)
    log_tail = np.log(M + a)
    leading = np.exp((1 - s) * log_tail) / (s - 1)
    total += leading
    total += np.exp(-s * log_tail) / 2
    coefficients = _euler_maclaurin_coefficients(max_order)
    rising = s
    bound = np.inf
    for k in range(1, max_order + 1):
        if k > 1:
            rising *= (s + 2 * k - 3) * (s + 2 * k - 2)
        term = coefficients[k - 1] * rising \
            * np.exp((-s - 2 * k + 1) * log_tail)
        total += term
        denominator = s.real + 2 * k + 1
        if denominator > 0:
            bound = float(np.max(np.abs(term))) * abs(s + 2 * k + 1) \
                / denominator
            if bound <= tol:
                break
    else:
        raise ConvergenceError(
            f'Euler-Maclaurin remainder {bound:.3e} exceeds {tol:.1e} at '
            f's = {s} after {max_order} terms.')
    if s.real < 0:
        magnitude = np.exp(-s.real * log_direct).sum(axis=0) \
            + np.abs(leading)
        _check_rounding(s, EPS * magnitude, total, tol)
    return total


def _log_cosh(x):
    return x + np.log1p(np.exp(-2.0 * x)) - LOG_2


def _hurwitz_reflected(s, a, tol, max_order):
    w = 1 - s
    sigma = w.real
    log_gamma = complex(special.loggamma(w))
    # |2 Gamma(w) (2 pi)^{-w} cos(2 pi n a - pi w / 2)| <= scale
    log_scale = LOG_2 + log_gamma.real + _log_cosh(pi * abs(w.imag) / 2) \
        - sigma * LOG_2PI
    if log_scale > MAX_LOG_SCALE:
        raise ConvergenceError(f'zeta({s}, a) overflows double precision.')
    scale = exp(log_scale)
    target = tol * max(1.0, scale)
    # scale * sum_{n > N} n^{-sigma} <= scale N^{1-sigma} / (sigma-1)
    log_terms = (log_scale - log(target * (sigma - 1))) / (sigma - 1)
    if log_terms > log(REFLECTION_TERMS):
        raise ConvergenceError(
            f'The reflected series at s = {s} needs more than '
            f'{REFLECTION_TERMS} terms for tol {tol:.1e}.')
    N = max(1, int(ceil(exp(log_terms))))
    wraps = np.ceil(a) - 1.0
    base = a - wraps
    total = np.zeros(len(a), dtype=np.complex128)
    step = max(1, (1 << 22) // len(a))
    for start in range(1, N + 1, step):
        n = np.arange(start, min(start + step, N + 1), dtype=np.float64)
        phase = 2 * pi * np.mod(np.outer(base, n), 1.0) - pi * w / 2
        total += (np.cos(phase) * np.exp(-w * np.log(n))).sum(axis=1)
    total *= 2 * np.exp(log_gamma - w * LOG_2PI)
    for j in range(int(wraps.max(initial=0.0))):
        inside = wraps > j
        total[inside] -= np.exp(-s * np.log(base[inside] + j))
    if not np.all(np.isfinite(total)):
        raise ConvergenceError(f'zeta({s}, a) overflows double precision.')
    _check_rounding(s, 4 * EPS * scale * sigma / (sigma - 1), total, tol)
    return total


def _check_rounding(s, loss, total, tol):
    """Raises when float64 rounding alone can exceed the accuracy target."""
    worst = float(np.max(loss - tol * np.maximum(1.0, np.abs(total)),
                         initial=-np.inf))
    if worst > 0:
        raise ConvergenceError(
            f'Rounding error in zeta({s}, a) exceeds the target for tol '
            f'{tol:.1e}; cancellation is too severe in double precision.')


def decay_constant(xs, cfg=DEFAULT_QUADRATURE):
    """The smallest C with |V(x)| <= C e^{-x/2} on the given points."""
    return max(abs(v_weight(x, cfg)) * exp(x / 2) for x in xs)


def small_x_constant(xs, cfg=DEFAULT_QUADRATURE, power=0.45):
    """The smallest C' with |V(x) - 1| <= C' x^power on the given points."""
    return max(abs(v_weight(x, cfg) - 1.0) / x ** power for x in xs)
