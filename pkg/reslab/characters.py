#!/usr/bin/python3

"""
This module provides exact arithmetic for Dirichlet characters modulo an
odd integer q, the Kronecker symbol and the real characters chi_{8d}, Gauss
sums, and the divisor-like coefficients d_psi(n) = sum_{ab=n} psi(a)
conj(psi(b)).

Characters are stored as full value tables of length q. The group of
units modulo q is split by the Chinese remainder theorem into cyclic
prime-power components, each generated by its smallest primitive root; a
character is labelled by its exponent vector at those generators. Integer
exponents are kept next to the complex values, so order, parity and
primitivity are decided exactly.
"""
import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from reslab.errors import InvalidInputError
from reslab.sieve import (factorize, is_squarefree, primes_up_to,
                          squarefree_segments)

logger = logging.getLogger(__name__)

MAX_MODULUS = 10 ** 6


def smallest_primitive_root(modulus, totient, totient_primes):
    """
    Finds the smallest primitive root of a cyclic unit group.

    Args:
        modulus (int): An odd prime power p^e.
        totient (int): phi(p^e).
        totient_primes (list[int]): The distinct primes dividing totient.

    Returns:
        int: The smallest g whose multiplicative order is `totient`.
    """
    for g in range(2, modulus + 1):
        if gcd(g, modulus) != 1:
            continue
        if all(pow(g, totient // r, modulus) != 1 for r in totient_primes):
            return g
    return 1


@dataclass(frozen=True)
class _Component:
    prime: int
    exponent: int
    modulus: int
    totient: int
    generator: int
    dlog: np.ndarray = field(repr=False)


@lru_cache(maxsize=64)
def _structure(q):
    """Returns the cyclic components of (Z/qZ)* and their log tables."""
    components = []
    residues = np.arange(q, dtype=np.int64)
    for p, e in factorize(q):
        m = p ** e
        phi = (p - 1) * p ** (e - 1)
        totient_primes = [r for r, _ in factorize(phi)] if phi > 1 else []
        g = smallest_primitive_root(m, phi, totient_primes)
        table = np.full(m, -1, dtype=np.int64)
        x = 1
        for k in range(phi):
            table[x] = k
            x = x * g % m
        components.append(_Component(p, e, m, phi, g, table[residues % m]))
    exponent = lcm(*[c.totient for c in components]) if components else 1
    return tuple(components), exponent


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    """
    A Dirichlet character modulo an odd integer q > 1.

    Attributes:
        modulus (int): The modulus q.
        label (tuple[int, ...]): Exponents at the component generators.
        exponents (numpy.ndarray): psi(n) = exp(2 pi i exponents[n] /
            denominator) on units, -1 at non-units.
        denominator (int): Exponent of the unit group (lcm of totients).
        values (numpy.ndarray): Complex value table of length q.
        order (int): Multiplicative order of the character.
        is_even (bool): psi(-1) == 1.
        conductor (int): Modulus of the inducing primitive character.
    """
    modulus: int
    label: tuple
    exponents: np.ndarray = field(repr=False)
    denominator: int = field(repr=False)
    values: np.ndarray = field(repr=False)
    order: int
    is_even: bool
    conductor: int

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return (self.modulus, self.label) == (other.modulus, other.label)

    def __hash__(self):
        return hash((self.modulus, self.label))

    def __call__(self, n):
        return complex(self.values[n % self.modulus])

    @property
    def is_primitive(self):
        return self.conductor == self.modulus

    @property
    def is_principal(self):
        return self.order == 1

    @property
    def is_quadratic(self):
        return self.order == 2

    @property
    def label_text(self):
        """The label as text, exponents joined by dots (e.g. '1.3')."""
        return '.'.join(str(k) for k in self.label)

    def conjugate(self):
        """Returns the complex conjugate character."""
        components, _ = _structure(self.modulus)
        label = tuple((-k) % c.totient
                      for k, c in zip(self.label, components))
        return _build_character(self.modulus, label)

    def __repr__(self):
        return (f'DirichletCharacter(q={self.modulus}, '
                f'label={self.label_text}, order={self.order})')


def _component_conductor(component, k):
    if k == 0:
        return 1
    if component.exponent == 1:
        return component.prime
    v = 0
    while k % component.prime == 0:
        k //= component.prime
        v += 1
    return component.prime ** max(1, component.exponent - v)


@lru_cache(maxsize=4096)
def _build_character(q, label):
    components, denominator = _structure(q)
    exponents = np.zeros(q, dtype=np.int64)
    units = np.ones(q, dtype=bool)
    order = 1
    conductor = 1
    for k, component in zip(label, components):
        units &= component.dlog >= 0
        exponents += k * component.dlog * (denominator // component.totient)
        order = lcm(order, component.totient // gcd(component.totient, k))
        conductor *= _component_conductor(component, k)
    exponents %= denominator
    exponents[~units] = -1
    values = np.where(
        units, np.exp(2j * np.pi * exponents / denominator), 0)
    exponents.flags.writeable = False
    values.flags.writeable = False
    return DirichletCharacter(
        modulus=q, label=label, exponents=exponents,
        denominator=denominator, values=values, order=order,
        is_even=bool(exponents[q - 1] == 0), conductor=conductor)


def _validate_modulus(q):
    if not isinstance(q, (int, np.integer)) or q <= 1 or q % 2 == 0:
        raise InvalidInputError(
            f'The modulus must be an odd integer greater than 1, got {q}.')
    if q > MAX_MODULUS:
        raise InvalidInputError(
            f'The modulus must not exceed {MAX_MODULUS}, got {q}.')
    return int(q)


def character_group(q):
    """
    Enumerates every Dirichlet character modulo q.

    Args:
        q (int): An odd integer, 1 < q <= 10^6.

    Returns:
        list[DirichletCharacter]: phi(q) characters sorted by label; the
            principal character (label of zeros) comes first.

    Raises:
        InvalidInputError: If q is even, 1, or too large.
    """
    q = _validate_modulus(q)
    components, _ = _structure(q)
    labels = itertools.product(*[range(c.totient) for c in components])
    return [_build_character(q, tuple(label)) for label in labels]


def character_from_label(q, label):
    """
    Builds the character modulo q with the given label.

    Args:
        q (int): The odd modulus.
        label (str | tuple[int, ...]): Exponent vector, either as a tuple or
            as text with exponents joined by dots.

    Returns:
        DirichletCharacter: The labelled character.

    Raises:
        InvalidInputError: If the label does not fit the group structure.
    """
    q = _validate_modulus(q)
    components, _ = _structure(q)
    if isinstance(label, str):
        try:
            label = tuple(int(part) for part in label.strip().split('.'))
        except ValueError:
            raise InvalidInputError(f"Malformed character label '{label}'.")
    label = tuple(int(k) for k in label)
    if len(label) != len(components):
        raise InvalidInputError(
            f'A label modulo {q} needs {len(components)} exponent(s), '
            f'got {len(label)}.')
    for k, component in zip(label, components):
        if not 0 <= k < component.totient:
            raise InvalidInputError(
                f'Exponent {k} is out of range for the component modulo '
                f'{component.modulus}.')
    return _build_character(q, label)


def require_twistable(psi):
    """
    Checks that psi is even, primitive and non-quadratic (and therefore
    non-principal), as the central-value formulas require.

    Raises:
        InvalidInputError: Naming the first failed property.
    """
    if not psi.is_primitive:
        raise InvalidInputError(f'{psi!r} is not primitive.')
    if not psi.is_even:
        raise InvalidInputError(f'{psi!r} is odd; an even character is '
                                'required.')
    if psi.order <= 2:
        raise InvalidInputError(f'{psi!r} is quadratic or principal.')


def jacobi(a, n):
    """
    The Jacobi symbol (a/n) for odd positive n.

    Args:
        a (int): Any integer.
        n (int): An odd positive integer.

    Returns:
        int: -1, 0 or 1.
    """
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a, n):
    """
    The Kronecker symbol (a/n), completely multiplicative in n.

    Args:
        a (int): Top entry.
        n (int): Bottom entry; not both a and n may be zero.

    Returns:
        int: -1, 0 or 1.

    Raises:
        InvalidInputError: If a == n == 0.
    """
    a, n = int(a), int(n)
    if n == 0:
        if a == 0:
            raise InvalidInputError('The Kronecker symbol (0/0) is '
                                    'undefined.')
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    twos = (n & -n).bit_length() - 1
    if twos:
        if a % 2 == 0:
            return 0
        n >>= twos
        if twos % 2 and a % 8 in (3, 5):
            result = -result
    return result * jacobi(a, n)


def _validate_d(d):
    if not isinstance(d, (int, np.integer)) or d < 1 or d % 2 == 0:
        raise InvalidInputError(
            f'd must be a positive odd integer, got {d}.')
    if not is_squarefree(int(d)):
        raise InvalidInputError(f'd = {d} is not square-free.')
    return int(d)


def chi_8d(d, n):
    """
    The real character chi_{8d}(n) = (8d/n).

    Args:
        d (int): Positive, odd, square-free.
        n (int): Any integer.

    Returns:
        int: -1, 0 or 1; zero exactly when gcd(n, 8d) > 1.

    Raises:
        InvalidInputError: If d is even or not square-free.
    """
    return kronecker(8 * _validate_d(d), n)


@lru_cache(maxsize=256)
def _legendre_table(p):
    table = -np.ones(p, dtype=np.int8)
    table[(np.arange(1, p, dtype=np.int64) ** 2) % p] = 1
    table[0] = 0
    table.flags.writeable = False
    return table


def chi_8d_values(d, n):
    """
    Evaluates chi_{8d} on an array of non-negative integers.

    For odd n, (8d/n) = (2/n) (d/n) and quadratic reciprocity turns (d/n)
    into a product of Legendre symbols (n/p) over the primes p | d.
    """
    d = _validate_d(d)
    n = np.asarray(n, dtype=np.int64)
    two = np.where((n % 8 == 1) | (n % 8 == 7), 1, -1).astype(np.int8)
    sign = np.where((d % 4 == 3) & (n % 4 == 3), -1, 1).astype(np.int8)
    values = two * sign
    for p, _ in factorize(d):
        values = values * _legendre_table(p)[n % p]
    values[n % 2 == 0] = 0
    return values.astype(np.int8)


@lru_cache(maxsize=512)
def chi_8d_table(d):
    """Returns chi_{8d}(r) for 0 <= r < 8d as a read-only int8 array."""
    table = chi_8d_values(d, np.arange(8 * _validate_d(d), dtype=np.int64))
    table.flags.writeable = False
    return table


@dataclass(frozen=True)
class TwistSpec:
    """
    The twisted character psi (x) chi_{8d} of conductor 8dq.

    Attributes:
        character (DirichletCharacter): The character psi.
        d (int): Odd, square-free, coprime to 2q.
    """
    character: DirichletCharacter
    d: int

    def __post_init__(self):
        d = _validate_d(self.d)
        if gcd(d, 2 * self.character.modulus) != 1:
            raise InvalidInputError(
                f'd = {d} is not coprime to 2q = '
                f'{2 * self.character.modulus}.')

    @property
    def conductor(self):
        return 8 * self.d * self.character.modulus

    def values(self, n):
        """Evaluates psi(n) chi_{8d}(n) on an integer array."""
        n = np.asarray(n, dtype=np.int64)
        psi = self.character.values[n % self.character.modulus]
        return psi * chi_8d_table(self.d)[n % (8 * self.d)]


def gauss_sum(psi, primitive=True):
    """
    The Gauss sum tau(psi) = sum_a psi(a) e^{2 pi i a / q}.

    Args:
        psi (DirichletCharacter): The character.
        primitive (bool): Refuse imprimitive characters, whose sums do
            not have magnitude sqrt(q).

    Raises:
        InvalidInputError: If primitive is set and psi is imprimitive.
    """
    if primitive and not psi.is_primitive:
        raise InvalidInputError(
            f'{psi!r} is imprimitive; its Gauss sum is not normalized.')
    a = np.arange(psi.modulus)
    return complex(np.sum(psi.values * np.exp(2j * np.pi * a / psi.modulus)))


def _local_d_psi(z, k):
    return sum(z ** j * z.conjugate() ** (k - j) for j in range(k + 1))


def d_psi(psi, n):
    """
    The coefficient d_psi(n) = sum_{ab=n} psi(a) conj(psi(b)).

    The function is multiplicative and is assembled from its prime-power
    factors; it is real for every n.

    Args:
        psi (DirichletCharacter): The character.
        n (int): A positive integer up to the factorization bound.

    Returns:
        complex: d_psi(n).

    Raises:
        InvalidInputError: If n < 1.
    """
    if n < 1:
        raise InvalidInputError(f'd_psi(n) needs n >= 1, got {n}.')
    value = complex(1)
    for p, k in factorize(int(n)):
        value *= _local_d_psi(psi(p), k)
    return value


@lru_cache(maxsize=8)
def d_psi_array(psi, N):
    """
    Tabulates d_psi(n) for 0 <= n <= N (entry 0 is 0) as real numbers.

    Primes p with p^2 > N only occur to the first power, so one strided
    multiplication by d_psi(p) = 2 Re psi(p) handles them; smaller primes
    get their full p-adic valuation.
    """
    table = np.ones(N + 1, dtype=np.float64)
    table[0] = 0.0
    for p in primes_up_to(N):
        p = int(p)
        z = psi(p)
        if p * p > N:
            table[p::p] *= 2.0 * z.real
            continue
        multiples = np.arange(p, N + 1, p, dtype=np.int64)
        valuation = np.ones(len(multiples), dtype=np.int64)
        pk = p * p
        while pk <= N:
            valuation[multiples % pk == 0] += 1
            pk *= p
        local = np.array([1.0] + [_local_d_psi(z, k).real
                                  for k in range(1, int(valuation.max()) + 1)])
        table[multiples] *= local[valuation]
    table.flags.writeable = False
    return table


def fundamental_d_range(X, q):
    """
    Yields the odd square-free d in (X, 2X] with gcd(d, 2q) = 1, ascending.

    Args:
        X (int): X >= 1.
        q (int): The odd modulus.

    Yields:
        int: Each admissible d, so that 8d is a fundamental discriminant.
    """
    for segment in squarefree_segments(X, q):
        yield from (int(d) for d in segment)


def fundamental_d_array(X, q):
    """The same range as fundamental_d_range, as one int64 array."""
    segments = list(squarefree_segments(X, q))
    if not segments:
        return np.array([], dtype=np.int64)
    return np.concatenate(segments)


def quadratic_character_sum(u, X, q):
    """
    Computes sum'_{X < d <= 2X, (d, 2q) = 1} chi_{8d}(u) by brute force.

    For odd u, chi_{8d}(u) = (8d/u) depends on d only modulo u, so the
    Jacobi symbols are tabulated once and gathered over the sieved range.

    Args:
        u (int): Odd positive integer.
        X (int): Range parameter.
        q (int): The odd modulus.

    Returns:
        int: The exact character sum.

    Raises:
        InvalidInputError: If u is even or not positive.
    """
    if u < 1 or u % 2 == 0:
        raise InvalidInputError(f'u must be odd and positive, got {u}.')
    table = np.array([jacobi(8 * r, u) for r in range(u)], dtype=np.int64)
    total = 0
    for segment in squarefree_segments(X, q):
        total += int(table[segment % u].sum())
    return total
