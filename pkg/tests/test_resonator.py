#!/usr/bin/python3

"""
Contains the test classes for the resonator schedule, its support and the
moments of |R(d)|.
"""
import os
import unittest
from math import lcm, log, sqrt

import numpy as np
import pycodestyle
from parameterized import parameterized

from reslab import resonator
from reslab.characters import (character_from_label, fundamental_d_array,
                               kronecker)
from reslab.errors import (BudgetExceededError, DegenerateParametersError,
                           InvalidInputError)
from reslab.resonator import (ASYMPTOTIC_C_L, ASYMPTOTIC_THETA,
                              ResonatorParams,
                              derive_schedule, euler_gain, local_density,
                              make_params, moment_r2, moment_r2_expansion,
                              moment_r6, power_sums, r_value,
                              resonance_exponent, resonator_value,
                              resonator_values, support, support_size_bound,
                              tuned_params)

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


class TestResonatorDocs(unittest.TestCase):
    """
    Tests to check the documentation and style of the resonator module.
    """

    def test_pycodestyle_conformance(self):
        """Test that resonator and its tests conform to PEP8."""
        style = pycodestyle.StyleGuide(quiet=True)
        result = style.check_files([
            os.path.join(ROOT, 'reslab', 'resonator.py'),
            os.path.join(ROOT, 'tests', 'test_resonator.py')])
        self.assertEqual(result.total_errors, 0, "Found code style errors" +
                         " (and warnings).")

    def test_module_docstring(self):
        """Test that the module is documented."""
        self.assertIn('resonator', resonator.__doc__)


class TestSchedule(unittest.TestCase):
    def test_asymptotic_schedule_is_tiny(self):
        """Test that theta = 1/24 at X = 2^48 gives N = 4."""
        N, L, guarded = derive_schedule(2 ** 48, ASYMPTOTIC_THETA,
                                        ASYMPTOTIC_C_L)
        self.assertEqual(N, 4)
        self.assertTrue(guarded)
        self.assertAlmostEqual(L, ASYMPTOTIC_C_L * sqrt(log(4)))

    def test_asymptotic_schedule_degenerate(self):
        """Test that the default schedule cannot run at desk scale."""
        with self.assertRaises(DegenerateParametersError) as context:
            make_params(2 ** 48)
        self.assertEqual(context.exception.N, 4)

    def test_small_c_L_degenerate(self):
        """Test that theta = 1/3, c_L = 1/8 at X = 10^6 is degenerate."""
        with self.assertRaises(DegenerateParametersError) as context:
            make_params(10 ** 6, 1 / 3, 1 / 8)
        self.assertEqual(context.exception.N, 100)
        self.assertLess(context.exception.L ** 2, 3)

    def test_tiny_N(self):
        """Test that N < 2 is degenerate."""
        self.assertEqual(derive_schedule(20, 0.1, 1.0)[:2], (1, 0.0))
        with self.assertRaises(DegenerateParametersError):
            make_params(20, 0.1, 1.0)

    @parameterized.expand([
        (15, 1 / 3, 1.0), (10 ** 4, 0.5, 1.0), (10 ** 4, 0.0, 1.0),
        (10 ** 4, 1 / 3, 0.0), (10 ** 4, 1 / 3, -1.0),
    ])
    def test_invalid_parameters(self, X, theta, c_L):
        """Test the ranges of X, theta and c_L."""
        with self.assertRaises(InvalidInputError):
            make_params(X, theta, c_L)

    def test_window_budget(self):
        """Test that a window past 10^8 is refused."""
        with self.assertRaises(BudgetExceededError):
            make_params(10 ** 4, 1 / 3, 60.0)

    def test_explicit_schedule(self):
        """Test N, L and the window primes for c_L = 2."""
        params = make_params(10 ** 4, 1 / 3, 2.0)
        self.assertEqual(params.N, 21)
        L = 2.0 * sqrt(log(21) * log(log(21)))
        self.assertAlmostEqual(params.L, L)
        self.assertEqual(params.window_primes,
                         tuple(p for p in range(2, int(L ** 4) + 1)
                               if all(p % k for k in range(2, p))
                               and p >= L ** 2))
        self.assertTrue(params.off_paper_regime)
        self.assertFalse(params.loglog_guarded)

    def test_asymptotic_regime_flag(self):
        """Test that the default constants are not flagged."""
        params = ResonatorParams(X=10 ** 30, theta=ASYMPTOTIC_THETA,
                                 c_L=ASYMPTOTIC_C_L, N=17782, L=0.5,
                                 window=(0.25, 0.0625), r_table=())
        self.assertFalse(params.off_paper_regime)


class TestTunedParams(unittest.TestCase):
    def setUp(self):
        """Set up the desk-scale schedule at X = 10^4."""
        self.params = tuned_params(10 ** 4, 1 / 3)
        self.psi0 = character_from_label(7, '2')

    def test_window_starts_at_three(self):
        """Test that the tuned window holds 3, 5 and 7."""
        self.assertEqual(self.params.N, 21)
        self.assertEqual(self.params.window_primes, (3, 5, 7))
        self.assertGreaterEqual(self.params.L ** 2, 3)

    def test_support(self):
        """Test the square-free products of window primes up to N."""
        self.assertEqual([n for n, _ in support(self.params)],
                         [1, 3, 5, 7, 15, 21])
        weights = dict(support(self.params))
        self.assertEqual(weights[1], 1.0)
        self.assertAlmostEqual(weights[15], self.params.r_prime(3)
                               * self.params.r_prime(5))

    @parameterized.expand([(1, 1.0), (9, 0.0), (2, 0.0), (11, 0.0)])
    def test_r_value(self, n, expected):
        """Test r(n) off the support."""
        self.assertEqual(r_value(self.params, n), expected)

    def test_r_value_prime(self):
        """Test r(p) = L / (sqrt(p) log p)."""
        L = self.params.L
        self.assertAlmostEqual(r_value(self.params, 5),
                               L / (sqrt(5) * log(5)))
        self.assertAlmostEqual(r_value(self.params, 21),
                               r_value(self.params, 3)
                               * r_value(self.params, 7))

    @parameterized.expand([(0,), (22,)])
    def test_r_value_range(self, n):
        """Test that r(n) is only defined for 1 <= n <= N."""
        with self.assertRaises(InvalidInputError):
            r_value(self.params, n)

    def test_batch_matches_single(self):
        """Test the tabulated R(d) against the direct sum."""
        ds = fundamental_d_array(300, 7)
        values = resonator_values(self.params, self.psi0, ds)
        for d, value in zip(ds, values):
            self.assertAlmostEqual(value,
                                   resonator_value(self.params, self.psi0,
                                                   int(d)), places=12)

    def test_support_size_bounds_every_value(self):
        """Test |R(d)| <= sum r(n)."""
        ds = fundamental_d_array(10 ** 4, 7)
        values = resonator_values(self.params, self.psi0, ds)
        self.assertLessEqual(np.max(np.abs(values)),
                             support_size_bound(self.params) + 1e-12)

    def test_r2_equals_expansion(self):
        """Test the scanned sum' |R|^2 against its m, n expansion."""
        empirical, bound = moment_r2(self.params, self.psi0, 10 ** 4, 7)
        expansion = moment_r2_expansion(self.params, self.psi0, 10 ** 4, 7)
        self.assertLessEqual(abs(empirical - expansion),
                             1e-9 * abs(expansion))
        self.assertLessEqual(empirical, 2 * bound)

    def test_power_sums(self):
        """Test the counts and the sixth moment envelope."""
        sums = power_sums(self.params, self.psi0, 2000, 7)
        self.assertEqual(sums.count, len(fundamental_d_array(2000, 7)))
        empirical, envelope = moment_r6(self.params, self.psi0, 2000, 7)
        self.assertEqual(empirical, sums.r6)
        self.assertLessEqual(empirical, 2 * envelope)

    def test_power_sums_modulus(self):
        """Test that psi0 must live modulo q."""
        with self.assertRaises(InvalidInputError):
            power_sums(self.params, self.psi0, 2000, 13)

    def test_resonance(self):
        """Test that psi0 resonates with itself."""
        self.assertGreater(resonance_exponent(self.params, self.psi0,
                                              self.psi0), 0)
        self.assertGreater(euler_gain(self.params, self.psi0, self.psi0), 1)

    def test_local_density(self):
        """Test h(p) with and without the d_psi(p) term."""
        self.assertAlmostEqual(local_density(0.0, 3), 1 + 1 / 3 + 1 / 9)
        self.assertAlmostEqual(local_density(-1.0, 2), 19 / 12)

    def test_tuned_needs_primes(self):
        """Test that a schedule with no window prime below N is refused."""
        with self.assertRaises(DegenerateParametersError):
            tuned_params(100, 1 / 3)

    def test_resonator_needs_twistable(self):
        """Test that R needs an even primitive non-quadratic psi0."""
        with self.assertRaises(InvalidInputError):
            resonator_value(self.params, character_from_label(7, '3'), 1)

    @parameterized.expand([(4,), (9,), (14,), (0,), (-3,), (21,)])
    def test_resonator_value_rejects_d(self, d):
        """Test that R(d) needs d odd, square-free and coprime to 14."""
        with self.assertRaises(InvalidInputError):
            resonator_value(self.params, self.psi0, d)

    @parameterized.expand([
        ([4, 9],), ([1, 9],), ([3, 14],), ([11, 35],), ([0, 1],),
        ([1, 3, 75],),
    ])
    def test_resonator_values_rejects_d(self, ds):
        """Test that the batch form refuses any bad entry."""
        with self.assertRaises(InvalidInputError):
            resonator_values(self.params, self.psi0, ds)

    def test_resonator_values_empty(self):
        """Test that an empty batch gives an empty result."""
        values = resonator_values(self.params, self.psi0, [])
        self.assertEqual(values.shape, (0,))

    def test_equal_on_support_gives_equal_value(self):
        """Test R(d) = R(d') when d = d' modulo every support element."""
        period = 1
        for n, _ in support(self.params):
            period = lcm(period, n)
        self.assertEqual(period, 105)
        d, shifted = 11, 11 + 2 * period
        self.assertEqual(shifted, 221)
        for n, _ in support(self.params):
            self.assertEqual(kronecker(8 * d, n), kronecker(8 * shifted, n))
        self.assertEqual(resonator_value(self.params, self.psi0, d),
                         resonator_value(self.params, self.psi0, shifted))
        values = resonator_values(self.params, self.psi0, [d, shifted])
        self.assertEqual(values[0], values[1])


if __name__ == '__main__':
    unittest.main()
