#!/usr/bin/python3

"""
Sieves over the integers: primes, square-free discriminant parameters,
divisor counts and small factorizations. Everything is built on numpy
boolean masks cleared with strided slices, segment by segment, so the
ranges used by the experiments (up to 10^8 for primes, up to 2*10^9 for d)
never need one huge array.
"""
import logging
from functools import lru_cache
from math import isqrt

import numpy as np

from reslab.errors import BudgetExceededError, InvalidInputError

logger = logging.getLogger(__name__)

SEGMENT_SIZE = 1 << 20
PRIME_SEGMENT_SIZE = 1 << 22
PRIME_LIMIT = 10 ** 8
FACTOR_BOUND = 10 ** 7


@lru_cache(maxsize=32)
def primes_up_to(n):
    """
    Returns every prime p <= n as a read-only int64 array.

    Args:
        n (int): Upper bound, inclusive.

    Returns:
        numpy.ndarray: The primes in increasing order.
    """
    if n < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, isqrt(n) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    primes = np.flatnonzero(is_prime).astype(np.int64)
    primes.flags.writeable = False
    return primes


def iter_prime_segments(x, segment=PRIME_SEGMENT_SIZE):
    """
    Streams the primes p <= x in ascending order, one array per segment.

    Args:
        x (int): Upper bound, at most 10^8.
        segment (int): Width of each sieved window.

    Yields:
        numpy.ndarray: The primes of the current window.

    Raises:
        BudgetExceededError: If x exceeds 10^8.
    """
    if x > PRIME_LIMIT:
        raise BudgetExceededError(
            f'Prime iteration is limited to x <= {PRIME_LIMIT}, got {x}.')
    base = primes_up_to(isqrt(max(x, 1)))
    low = 2
    while low <= x:
        high = min(low + segment, x + 1)
        mask = np.ones(high - low, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, -(-low // p) * p)
            mask[start - low::p] = False
        yield low + np.flatnonzero(mask).astype(np.int64)
        low = high


def distinct_prime_factors(n):
    """Returns the sorted distinct primes dividing n (n >= 1)."""
    return [p for p, _ in factorize(n)]


def factorize(n, bound=FACTOR_BOUND):
    """
    Factors n by trial division with a precomputed prime list.

    Args:
        n (int): A positive integer not larger than `bound`.
        bound (int): Largest integer the prime list can factor.

    Returns:
        list[tuple[int, int]]: (prime, exponent) pairs, primes ascending.

    Raises:
        InvalidInputError: If n < 1.
        BudgetExceededError: If n > bound.
    """
    if n < 1:
        raise InvalidInputError(f'Cannot factor {n}; expected n >= 1.')
    if n > bound:
        raise BudgetExceededError(
            f'{n} is above the factorization bound {bound}.')
    factors = []
    for p in primes_up_to(isqrt(bound)):
        p = int(p)
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    if n > 1:
        factors.append((n, 1))
    return factors


def is_squarefree(n):
    """True when no square of a prime divides the positive integer n."""
    return all(e == 1 for _, e in factorize(n))


def mobius(n):
    """The Moebius function mu(n) for n >= 1."""
    factors = factorize(n)
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


@lru_cache(maxsize=4)
def divisor_counts(n):
    """
    Tabulates sigma_0(k) for 0 <= k <= n (sigma_0(0) is set to 0).

    Every k = i*j with i <= j is counted twice from the smaller factor i,
    then perfect squares are corrected once.
    """
    counts = np.zeros(n + 1, dtype=np.int64)
    root = isqrt(n)
    for i in range(1, root + 1):
        counts[i * i::i] += 2
    counts[np.arange(1, root + 1) ** 2] -= 1
    counts.flags.writeable = False
    return counts


def squarefree_segments(X, q, segment=SEGMENT_SIZE):
    """
    Yields the odd square-free d in (X, 2X] with gcd(d, q) = 1, one
    ascending array per sieve segment.

    Args:
        X (int): Range parameter, X >= 1.
        q (int): Odd modulus whose prime factors are excluded.
        segment (int): Number of integers covered by one segment.

    Yields:
        numpy.ndarray: int64 array of admissible d in the segment.
    """
    if X < 1:
        raise InvalidInputError(f'X must be >= 1, got {X}.')
    if q < 1 or q % 2 == 0:
        raise InvalidInputError(f'q must be a positive odd integer, got {q}.')
    top = 2 * X
    square_primes = [int(p) for p in primes_up_to(isqrt(top)) if p > 2]
    excluded = distinct_prime_factors(q) if q > 1 else []
    low = X + 1
    while low <= top:
        high = min(low + segment, top + 1)
        mask = np.ones(high - low, dtype=bool)
        mask[low % 2::2] = False
        for p in excluded:
            start = -(-low // p) * p
            mask[start - low::p] = False
        for p in square_primes:
            p2 = p * p
            if p2 >= high:
                break
            start = -(-low // p2) * p2
            mask[start - low::p2] = False
        yield low + np.flatnonzero(mask).astype(np.int64)
        low = high
