#!/usr/bin/python3

"""
Contains the test classes for Dirichlet characters, the Kronecker symbol
and the coefficients d_psi(n).
"""
import os
import unittest
from math import gcd, sqrt

import numpy as np
import pycodestyle
from parameterized import parameterized

from reslab import characters
from reslab.characters import (TwistSpec, character_from_label,
                               character_group, chi_8d, chi_8d_table,
                               chi_8d_values, d_psi, d_psi_array,
                               fundamental_d_array, fundamental_d_range,
                               gauss_sum, jacobi, kronecker,
                               quadratic_character_sum, require_twistable,
                               smallest_primitive_root)
from reslab.errors import InvalidInputError
from reslab.sieve import factorize

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def totient(n):
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


class TestCharactersDocs(unittest.TestCase):
    """
    Tests to check the documentation and style of the characters module.
    """

    def test_pycodestyle_conformance(self):
        """Test that characters and its tests conform to PEP8."""
        style = pycodestyle.StyleGuide(quiet=True)
        result = style.check_files([
            os.path.join(ROOT, 'reslab', 'characters.py'),
            os.path.join(ROOT, 'tests', 'test_characters.py')])
        self.assertEqual(result.total_errors, 0, "Found code style errors" +
                         " (and warnings).")

    def test_function_docstrings(self):
        """Test that the public functions are documented."""
        for func in (character_group, character_from_label, chi_8d, d_psi,
                     gauss_sum, kronecker, quadratic_character_sum):
            self.assertTrue(func.__doc__, func.__name__)


class TestCharacterGroup(unittest.TestCase):
    @parameterized.expand([(3,), (5,), (7,), (9,), (15,), (21,), (25,),
                           (27,), (105,)])
    def test_group_size_and_orthogonality(self, q):
        """Test that there are phi(q) characters and that they sum to the
        indicator of n = 1 (mod q) times phi(q)."""
        group = character_group(q)
        phi = totient(q)
        self.assertEqual(len(group), phi)
        self.assertEqual(len(set(group)), phi)
        total = sum(psi.values for psi in group)
        expected = np.zeros(q)
        expected[1] = phi
        np.testing.assert_allclose(total, expected, atol=1e-9)

    @parameterized.expand([(7,), (9,), (15,), (45,)])
    def test_multiplicativity(self, q):
        """Test psi(mn) = psi(m) psi(n) for every character."""
        for psi in character_group(q):
            for m in range(1, q):
                for n in (2, 4, q - 1):
                    self.assertAlmostEqual(psi(m * n), psi(m) * psi(n))

    def test_modulus_seven(self):
        """Test the character table modulo 7."""
        group = character_group(7)
        self.assertEqual([psi.label_text for psi in group],
                         ['0', '1', '2', '3', '4', '5'])
        self.assertEqual([psi.order for psi in group], [1, 6, 3, 2, 3, 6])
        twistable = [psi.label_text for psi in group
                     if psi.is_even and psi.is_primitive
                     and not psi.is_quadratic and not psi.is_principal]
        self.assertEqual(twistable, ['2', '4'])
        self.assertTrue(group[0].is_principal)
        self.assertTrue(group[3].is_quadratic)
        self.assertFalse(group[3].is_even)

    def test_modulus_three(self):
        """Test that modulo 3 there are two characters."""
        self.assertEqual(len(character_group(3)), 2)

    @parameterized.expand([(4,), (1,), (0,), (-7,), (10 ** 6 + 1,)])
    def test_rejects_bad_modulus(self, q):
        """Test that an even, trivial or too large modulus is refused."""
        with self.assertRaises(InvalidInputError):
            character_group(q)

    @parameterized.expand([
        (9, '3', 3), (9, '2', 9), (9, '0', 1),
        (15, '1.0', 3), (15, '0.2', 5), (15, '1.1', 15), (45, '0.2', 5),
    ])
    def test_conductor(self, q, label, conductor):
        """Test conductors of imprimitive and primitive characters."""
        self.assertEqual(character_from_label(q, label).conductor, conductor)

    def test_conductor_matches_induced_values(self):
        """Test that an imprimitive character modulo 45 agrees with a
        character of its conductor on the units."""
        for psi in character_group(45):
            f = psi.conductor
            if f == 1 or f == 45:
                continue
            matches = [chi for chi in character_group(f)
                       if all(abs(chi(n) - psi(n)) < 1e-9
                              for n in range(1, 45) if gcd(n, 45) == 1)]
            self.assertEqual(len(matches), 1, repr(psi))
            self.assertTrue(matches[0].is_primitive)

    def test_conjugate(self):
        """Test that conjugation negates exponents and values."""
        psi = character_from_label(7, '2')
        self.assertEqual(psi.conjugate(), character_from_label(7, '4'))
        self.assertEqual(psi.conjugate().conjugate(), psi)
        np.testing.assert_allclose(psi.conjugate().values,
                                   np.conj(psi.values), atol=1e-12)

    @parameterized.expand([('7',), ('1.2',), ('a',), ('-1',), ('',)])
    def test_bad_labels(self, label):
        """Test that malformed or out-of-range labels are refused."""
        with self.assertRaises(InvalidInputError):
            character_from_label(7, label)

    def test_tuple_label(self):
        """Test that tuple labels and text labels agree."""
        self.assertEqual(character_from_label(15, (1, 3)),
                         character_from_label(15, '1.3'))

    @parameterized.expand([('3',), ('0',), ('1',)])
    def test_require_twistable_rejects(self, label):
        """Test that quadratic, principal and odd characters are refused."""
        with self.assertRaises(InvalidInputError):
            require_twistable(character_from_label(7, label))

    def test_require_twistable_rejects_imprimitive(self):
        """Test that an imprimitive even character is refused."""
        with self.assertRaises(InvalidInputError):
            require_twistable(character_from_label(45, '0.2'))

    @parameterized.expand([(7, 3), (9, 2), (25, 2), (27, 2), (49, 3),
                           (11, 2), (13, 2)])
    def test_smallest_primitive_root(self, m, expected):
        """Test the smallest primitive root of a few prime powers."""
        phi = totient(m)
        primes = [p for p, _ in factorize(phi)]
        self.assertEqual(smallest_primitive_root(m, phi, primes), expected)


class TestGaussSum(unittest.TestCase):
    @parameterized.expand([(7,), (9,), (13,), (15,), (25,)])
    def test_gauss_sum_magnitude(self, q):
        """Test |tau(psi)| = sqrt(q) for every primitive character."""
        for psi in character_group(q):
            if psi.is_primitive:
                self.assertAlmostEqual(abs(gauss_sum(psi)), sqrt(q),
                                       places=9)

    def test_gauss_sum_imprimitive(self):
        """Test that the principal character has no normalized Gauss
        sum."""
        with self.assertRaises(InvalidInputError):
            gauss_sum(character_from_label(7, '0'))
        raw = gauss_sum(character_from_label(7, '0'), primitive=False)
        self.assertAlmostEqual(raw, -1.0, places=12)


class TestKronecker(unittest.TestCase):
    @parameterized.expand([(3,), (5,), (7,), (11,), (101,)])
    def test_jacobi_euler_criterion(self, p):
        """Test (a/p) against a^((p-1)/2) mod p."""
        for a in range(-20, 3 * p):
            euler = pow(a % p, (p - 1) // 2, p)
            expected = -1 if euler == p - 1 else euler
            self.assertEqual(jacobi(a, p), expected, (a, p))

    def test_jacobi_multiplicative_in_bottom(self):
        """Test (a/mn) = (a/m)(a/n) for odd m, n."""
        for a in range(-10, 30):
            for m in (3, 5, 9, 15):
                for n in (7, 11, 21):
                    self.assertEqual(jacobi(a, m * n),
                                     jacobi(a, m) * jacobi(a, n))

    @parameterized.expand([
        (8, 3, -1), (8, 7, 1), (8, 2, 0), (5, 2, -1), (1, 2, 1),
        (3, -1, 1), (-3, -1, -1), (2, 0, 0), (1, 0, 1), (-1, 0, 1),
        (24, 7, -1), (40, 3, 1),
    ])
    def test_kronecker_values(self, a, n, expected):
        """Test Kronecker symbols including n even, negative or zero."""
        self.assertEqual(kronecker(a, n), expected)

    def test_kronecker_reciprocity(self):
        """Test (m/n)(n/m) = (-1)^((m-1)(n-1)/4) on random odd pairs."""
        rng = np.random.default_rng(4)
        checked = 0
        while checked < 10 ** 4:
            m, n = (2 * int(k) + 1 for k in rng.integers(0, 5 * 10 ** 5, 2))
            if gcd(m, n) != 1:
                continue
            sign = -1 if (m - 1) // 2 * ((n - 1) // 2) % 2 else 1
            self.assertEqual(kronecker(m, n) * kronecker(n, m), sign, (m, n))
            checked += 1

    def test_kronecker_zero_zero(self):
        """Test that (0/0) is undefined."""
        with self.assertRaises(InvalidInputError):
            kronecker(0, 0)

    @parameterized.expand([(1,), (3,), (5,), (15,), (21,), (105,), (11,)])
    def test_vectorized_chi_matches_scalar(self, d):
        """Test that chi_8d_values agrees with the Kronecker symbol."""
        n = np.arange(0, 600)
        expected = [kronecker(8 * d, int(k)) for k in n]
        self.assertEqual(chi_8d_values(d, n).tolist(), expected)

    def test_chi_is_a_character_mod_8d(self):
        """Test periodicity, zeros and multiplicativity of chi_{8d}."""
        d = 15
        table = chi_8d_table(d)
        for n in range(1, 8 * d):
            self.assertEqual(table[n] == 0, gcd(n, 8 * d) > 1)
            self.assertEqual(chi_8d(d, n + 8 * d), table[n])
            for m in (3, 7, 11):
                self.assertEqual(chi_8d(d, m * n), chi_8d(d, m) * table[n])

    @parameterized.expand([(2,), (9,), (0,), (-3,), (45,)])
    def test_chi_rejects_bad_d(self, d):
        """Test that even, non-square-free or non-positive d is refused."""
        with self.assertRaises(InvalidInputError):
            chi_8d(d, 3)


class TestTwistSpec(unittest.TestCase):
    def test_conductor(self):
        """Test the conductor 8dq."""
        twist = TwistSpec(character_from_label(7, '2'), 11)
        self.assertEqual(twist.conductor, 8 * 11 * 7)

    @parameterized.expand([(7,), (21,), (9,), (4,)])
    def test_rejects_d(self, d):
        """Test that d sharing a factor with 2q, or not square-free, is
        refused."""
        with self.assertRaises(InvalidInputError):
            TwistSpec(character_from_label(7, '2'), d)

    def test_values(self):
        """Test that twisted values multiply psi and chi_{8d}."""
        psi = character_from_label(7, '2')
        twist = TwistSpec(psi, 5)
        n = np.arange(1, 300)
        expected = [psi(int(k)) * kronecker(40, int(k)) for k in n]
        np.testing.assert_allclose(twist.values(n), expected, atol=1e-12)


class TestDPsi(unittest.TestCase):
    @parameterized.expand([(7, '2'), (13, '4'), (9, '2'), (15, '1.1')])
    def test_d_psi_brute_force(self, q, label):
        """Test d_psi(n) against its defining divisor sum."""
        psi = character_from_label(q, label)
        for n in range(1, 120):
            expected = sum(psi(a) * psi(n // a).conjugate()
                           for a in range(1, n + 1) if n % a == 0)
            self.assertAlmostEqual(d_psi(psi, n), expected, places=10)
            self.assertAlmostEqual(d_psi(psi, n).imag, 0.0, places=10)

    @parameterized.expand([(7, '2'), (13, '2'), (25, '2')])
    def test_table_matches_pointwise(self, q, label):
        """Test that the sieved table agrees with d_psi."""
        psi = character_from_label(q, label)
        table = d_psi_array(psi, 3000)
        self.assertEqual(table[0], 0.0)
        for n in list(range(1, 200)) + [1024, 2401, 2187, 2999, 3000]:
            self.assertAlmostEqual(table[n], d_psi(psi, n).real, places=9)

    @parameterized.expand([(7, '2'), (13, '4')])
    def test_table_is_a_convolution(self, q, label):
        """Test d_psi = psi * conj(psi) as Dirichlet convolution to 10^4."""
        psi = character_from_label(q, label)
        N = 10 ** 4
        convolution = np.zeros(N + 1, dtype=np.complex128)
        for a in range(1, N + 1):
            b = np.arange(1, N // a + 1)
            convolution[a * b] += psi(a) * np.conj(psi.values[b % q])
        np.testing.assert_allclose(convolution.imag, 0.0, atol=1e-9)
        np.testing.assert_allclose(d_psi_array(psi, N), convolution.real,
                                   atol=1e-9)

    def test_conjugate_has_same_coefficients(self):
        """Test d_psi = d_conj(psi)."""
        psi = character_from_label(13, '2')
        np.testing.assert_allclose(d_psi_array(psi, 500),
                                   d_psi_array(psi.conjugate(), 500),
                                   atol=1e-12)

    def test_d_psi_rejects_zero(self):
        """Test that n < 1 is refused."""
        with self.assertRaises(InvalidInputError):
            d_psi(character_from_label(7, '2'), 0)


class TestFundamentalRange(unittest.TestCase):
    def test_small_range(self):
        """Test the admissible d in (10, 20] for q = 7."""
        self.assertEqual(list(fundamental_d_range(10, 7)),
                         [11, 13, 15, 17, 19])

    def test_array_matches_range(self):
        """Test that the array and generator forms agree."""
        self.assertEqual(fundamental_d_array(5000, 21).tolist(),
                         list(fundamental_d_range(5000, 21)))

    @parameterized.expand([(1, 10 ** 3, 7), (3, 10 ** 3, 7),
                           (15, 2000, 7), (9, 500, 13)])
    def test_quadratic_character_sum(self, u, X, q):
        """Test the tabulated sum against chi_8d evaluated one by one."""
        expected = sum(chi_8d(d, u) for d in fundamental_d_range(X, q))
        self.assertEqual(quadratic_character_sum(u, X, q), expected)

    def test_quadratic_character_sum_counts_range(self):
        """Test that u = 1 counts the admissible d."""
        self.assertEqual(quadratic_character_sum(1, 10, 7), 5)

    @parameterized.expand([(2,), (0,)])
    def test_quadratic_character_sum_rejects_u(self, u):
        """Test that an even or zero u is refused."""
        with self.assertRaises(InvalidInputError):
            quadratic_character_sum(u, 100, 7)

    def test_module_documented(self):
        """Test the module docstring."""
        self.assertIn('Dirichlet', characters.__doc__)


if __name__ == '__main__':
    unittest.main()
