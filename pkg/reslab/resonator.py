#!/usr/bin/python3

"""
The resonator R(d) = sum_{n <= N} r(n) chi_{8d}(n) psi_0(n).

r is multiplicative, supported on square-free products of the window primes
L^2 <= p <= L^4, with r(p) = L / (sqrt(p) log p), where N = X^theta and
L = c_L sqrt(log N log log N). The asymptotic schedule is theta = 1/24,
c_L = 1/8; any other choice, or a guarded log log N, marks the run as
off_paper_regime. Desk-scale runs need a larger theta to keep N >= 2.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import floor, isqrt, log, pi, sqrt

import numpy as np

from reslab.characters import (TwistSpec, d_psi, jacobi, kronecker,
                               quadratic_character_sum, require_twistable)
from reslab.errors import (BudgetExceededError, DegenerateParametersError,
                           InvalidInputError)
from reslab.sieve import (PRIME_LIMIT, factorize, primes_up_to,
                          squarefree_segments)

logger = logging.getLogger(__name__)

ASYMPTOTIC_THETA = 1 / 24
ASYMPTOTIC_C_L = 1 / 8
ZETA_2 = pi ** 2 / 6
WINDOW_SLACK = 1e-9


def derive_schedule(X, theta, c_L):
    """
    Computes N and L for a scale X without validating them.

    Returns:
        tuple[int, float, bool]: N = floor(X^theta), L, and whether the
            guard max(log log N, 1) replaced log log N.
    """
    N = int(floor(X ** theta + 1e-9))
    if N < 2:
        return N, 0.0, True
    loglog = log(log(N))
    guarded = N < 16 or loglog < 1
    L = c_L * sqrt(log(N) * max(loglog, 1.0))
    return N, L, guarded


@dataclass(frozen=True)
class ResonatorParams:
    """
    A resonator schedule.

    Attributes:
        X (int): Discriminant scale.
        theta (float): N = floor(X^theta).
        c_L (float): L = c_L sqrt(log N log log N).
        N (int): Length of the Dirichlet polynomial.
        L (float): Window parameter.
        window (tuple[float, float]): (L^2, L^4).
        r_table (tuple[tuple[int, float], ...]): (p, r(p)) for every window
            prime, ascending.
        loglog_guarded (bool): The log log guard was used.
    """
    X: int
    theta: float
    c_L: float
    N: int
    L: float
    window: tuple
    r_table: tuple = field(repr=False)
    loglog_guarded: bool = False

    @property
    def off_paper_regime(self):
        return (self.loglog_guarded or self.theta != ASYMPTOTIC_THETA
                or self.c_L != ASYMPTOTIC_C_L)

    @property
    def window_primes(self):
        return tuple(p for p, _ in self.r_table)

    def r_prime(self, p):
        """r(p) for a prime p, zero outside the window."""
        return dict(self.r_table).get(p, 0.0)


def make_params(X, theta=ASYMPTOTIC_THETA, c_L=ASYMPTOTIC_C_L):
    """
    Builds and validates a resonator schedule.

    Args:
        X (int): Scale, X >= 16.
        theta (float): Exponent in (0, 1/2).
        c_L (float): Positive window constant.

    Returns:
        ResonatorParams: The populated schedule.

    Raises:
        InvalidInputError: For X < 16 or theta, c_L out of range.
        DegenerateParametersError: When N < 2 or L^2 < 3.
        BudgetExceededError: When L^4 is beyond the prime sieve limit.
    """
    if X < 16:
        raise InvalidInputError(f'X must be at least 16, got {X}.')
    if not 0 < theta < 0.5:
        raise InvalidInputError(f'theta must lie in (0, 1/2), got {theta}.')
    if c_L <= 0:
        raise InvalidInputError(f'c_L must be positive, got {c_L}.')
    N, L, guarded = derive_schedule(X, theta, c_L)
    if N < 2:
        raise DegenerateParametersError(
            f'N = {N} is too small; raise theta or X.', N=N, L=L)
    if L * L < 3:
        raise DegenerateParametersError(
            f'L^2 = {L * L:.4g} < 3 with N = {N}; raise c_L.', N=N, L=L)
    low, high = L ** 2, L ** 4
    if high > PRIME_LIMIT:
        raise BudgetExceededError(
            f'The prime window reaches L^4 = {high:.4g}.')
    primes = primes_up_to(int(floor(high)))
    table = tuple((int(p), L / (sqrt(p) * log(p)))
                  for p in primes[primes >= low * (1 - WINDOW_SLACK)])
    if guarded:
        logger.warning('Resonator schedule for X=%d uses the log log guard '
                       '(N=%d)', X, N)
    return ResonatorParams(X=X, theta=theta, c_L=c_L, N=N, L=L,
                           window=(low, high), r_table=table,
                           loglog_guarded=guarded)


@lru_cache(maxsize=64)
def support(params):
    """
    Lists the n <= N with r(n) != 0 and their weights.

    Square-free products of window primes are enumerated depth first, primes
    taken in increasing order, pruning once the product passes N.

    Returns:
        tuple[tuple[int, float], ...]: (n, r(n)) sorted by n; always starts
            with (1, 1.0).
    """
    found = []

    def extend(start, n, weight):
        found.append((n, weight))
        for index in range(start, len(params.r_table)):
            p, r = params.r_table[index]
            if n * p > params.N:
                break
            extend(index + 1, n * p, weight * r)

    extend(0, 1, 1.0)
    return tuple(sorted(found))


def r_value(params, n):
    """
    The multiplicative weight r(n).

    Raises:
        InvalidInputError: If n < 1 or n > N.
    """
    if n < 1 or n > params.N:
        raise InvalidInputError(
            f'r(n) is defined for 1 <= n <= N = {params.N}, got {n}.')
    weight = 1.0
    for p, e in factorize(n):
        if e > 1:
            return 0.0
        weight *= params.r_prime(p)
    return weight


def resonator_value(params, psi0, d):
    """
    R(d) for one twist parameter.

    Args:
        params (ResonatorParams): The schedule.
        psi0 (DirichletCharacter): Even, primitive, non-quadratic.
        d (int): Odd square-free twist parameter, coprime to q.

    Returns:
        complex: The finite sum over the support.

    Raises:
        InvalidInputError: If psi0 cannot be twisted or d is not odd,
            square-free and coprime to 2q.
    """
    require_twistable(psi0)
    d = TwistSpec(psi0, d).d
    return sum(r * kronecker(8 * d, n) * psi0(n) for n, r in support(params))


def _validate_ds(ds, q):
    if ds.size == 0:
        return
    if ds.min() < 1 or np.any(ds % 2 == 0):
        raise InvalidInputError('Every d must be a positive odd integer.')
    if np.any(np.gcd(ds, q) != 1):
        raise InvalidInputError(f'Every d must be coprime to 2q = {2 * q}.')
    for p in primes_up_to(isqrt(int(ds.max()))):
        if p > 2 and np.any(ds % (int(p) * int(p)) == 0):
            raise InvalidInputError(
                f'Some d is divisible by {p}^2 and is not square-free.')


def resonator_values(params, psi0, ds):
    """
    R(d) for an array of odd d.

    Every support n is odd, so chi_{8d}(n) is a Jacobi symbol that only
    depends on d mod n and is gathered from a table of length n.

    Raises:
        InvalidInputError: If some d is not odd, square-free and coprime
            to 2q.
    """
    require_twistable(psi0)
    ds = np.asarray(ds, dtype=np.int64)
    _validate_ds(ds, psi0.modulus)
    return _gather_values(params, psi0, ds)


def _gather_values(params, psi0, ds):
    values = np.zeros(ds.shape, dtype=np.complex128)
    for n, r in support(params):
        coefficient = r * psi0(n)
        if coefficient == 0:
            continue
        if n == 1:
            values += coefficient
            continue
        table = np.array([jacobi(8 * residue, n) for residue in range(n)],
                         dtype=np.float64)
        values += coefficient * table[ds % n]
    return values


@dataclass(frozen=True)
class PowerSums:
    """Counts and power sums of |R(d)| over X < d <= 2X, (d, 2q) = 1."""
    count: int
    r2: float
    r6: float


def power_sums(params, psi0, X, q):
    """
    Scans the sieved range once, segment by segment.

    Partial sums are formed per segment and added in segment order.
    """
    if psi0.modulus != q:
        raise InvalidInputError(
            f'psi0 is a character modulo {psi0.modulus}, not {q}.')
    count, r2, r6 = 0, 0.0, 0.0
    for segment in squarefree_segments(X, q):
        weights = np.abs(_gather_values(params, psi0, segment)) ** 2
        count += len(segment)
        r2 += float(np.sum(weights))
        r6 += float(np.sum(weights ** 3))
    return PowerSums(count, r2, r6)


def r2_bound(params, X):
    """(X / zeta(2)) prod_window (1 + r(p)^2)."""
    r = np.array([w for _, w in params.r_table])
    return X / ZETA_2 * float(np.prod(1 + r ** 2))


def r6_envelope(params, X):
    """X prod_window (1 + 15 r(p)^2 + 15 r(p)^4 + r(p)^6)."""
    r = np.array([w for _, w in params.r_table])
    return X * float(np.prod(1 + 15 * r ** 2 + 15 * r ** 4 + r ** 6))


def moment_r2(params, psi0, X, q):
    """
    Returns (sum' |R(d)|^2, (X / zeta(2)) prod (1 + r(p)^2)).
    """
    return power_sums(params, psi0, X, q).r2, r2_bound(params, X)


def moment_r6(params, psi0, X, q):
    """
    Returns (sum' |R(d)|^6, X prod (1 + 15 r^2 + 15 r^4 + r^6)).
    """
    return power_sums(params, psi0, X, q).r6, r6_envelope(params, X)


def moment_r2_expansion(params, psi0, X, q):
    """
    Expands sum' |R(d)|^2 as

        sum_{m, n} r(m) r(n) psi0(m) conj(psi0(n)) sum' chi_{8d}(mn)

    with each inner character sum computed by brute force.
    """
    terms = [(n, r * psi0(n)) for n, r in support(params)]
    sums = {}
    total = 0j
    for m, a in terms:
        for n, b in terms:
            if m * n not in sums:
                sums[m * n] = quadratic_character_sum(m * n, X, q)
            total += a * b.conjugate() * sums[m * n]
    return total.real


def local_density(dpsi_p, p):
    """h(p^k) = 1 + 1/p + 1/p^2 - d_psi(p)^2 / (p (p + 1)), for k >= 1."""
    return 1 + 1 / p + 1 / p ** 2 - dpsi_p ** 2 / (p * (p + 1))


def resonance_exponent(params, psi0, psi):
    """sum_window r(p) d_psi0(p) d_psi(p) / sqrt(p)."""
    return sum(r * d_psi(psi0, p).real * d_psi(psi, p).real / sqrt(p)
               for p, r in params.r_table)


def euler_gain(params, psi0, psi):
    """
    The cross factor of the mixed-moment Euler product,

        prod_window (1 + r(p)/h(p) d_psi0(p) d_psi(p) sqrt(p)/(p + 1)),

    which is above 1 when psi resonates with psi0.
    """
    gain = 1.0
    for p, r in params.r_table:
        d0, d1 = d_psi(psi0, p).real, d_psi(psi, p).real
        gain *= 1 + r / local_density(d1, p) * d0 * d1 * sqrt(p) / (p + 1)
    return gain


def support_size_bound(params):
    """sum_{n <= N} r(n), which bounds |R(d)| for every d."""
    return sum(r for _, r in support(params))


def tuned_params(X, theta=1 / 3, min_primes=2):
    """
    A desk-scale schedule: c_L is chosen so that L^2 sits just above 3,
    the smallest window the schedule allows.

    Raises:
        DegenerateParametersError: If fewer than min_primes window primes
            are <= N.
    """
    N, _, _ = derive_schedule(X, theta, 1.0)
    if N < 2:
        raise DegenerateParametersError(f'N = {N} is too small.', N=N)
    c_L = sqrt(3.0 / (log(N) * max(log(log(N)), 1.0))) * (1 + 1e-12)
    params = make_params(X, theta, c_L)
    usable = [p for p in params.window_primes if p <= params.N]
    if len(usable) < min_primes:
        raise DegenerateParametersError(
            f'Only {len(usable)} window prime(s) are <= N = {params.N}.',
            N=params.N, L=params.L)
    return params
