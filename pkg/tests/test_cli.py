#!/usr/bin/python3

"""
Contains the test classes for the `reslab` command line.
"""
import json
import logging
import os
import shutil
import tempfile
import unittest

import pycodestyle
from click.testing import CliRunner

from reslab.cli import cli

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
SAMPLE = os.path.join(ROOT, 'datasets', 'reslab.conf')


class TestCliDocs(unittest.TestCase):
    """
    Tests to check the documentation and style of the cli module.
    """

    def test_pycodestyle_conformance(self):
        """Test that cli and its tests conform to PEP8."""
        style = pycodestyle.StyleGuide(quiet=True)
        result = style.check_files([
            os.path.join(ROOT, 'reslab', 'cli.py'),
            os.path.join(ROOT, 'reslab', '__main__.py'),
            os.path.join(ROOT, 'tests', 'test_cli.py')])
        self.assertEqual(result.total_errors, 0, "Found code style errors" +
                         " (and warnings).")

    def test_exit_codes_documented(self):
        """Test that the module docstring lists the exit codes."""
        from reslab import cli as module
        for code in ('0', '1', '2', '3'):
            self.assertIn(code, module.__doc__)


class TestCli(unittest.TestCase):
    def setUp(self):
        """Set up a runner and a scratch directory for cache and output."""
        self.directory = tempfile.mkdtemp()
        self.cache = os.path.join(self.directory, 'cache.txt')
        self.runner = CliRunner()

    def tearDown(self):
        """Drop the log handlers bound to the runner's streams."""
        package_logger = logging.getLogger('reslab')
        for handler in list(package_logger.handlers):
            package_logger.removeHandler(handler)
            handler.close()
        shutil.rmtree(self.directory)

    def invoke(self, *args):
        return self.runner.invoke(cli, list(args),
                                  env={'RESLAB_CACHE': self.cache})

    def path(self, name):
        return os.path.join(self.directory, name)

    def test_chars(self):
        """Test the character table for q = 7."""
        result = self.invoke('chars', '--q', '7')
        self.assertEqual(result.exit_code, 0)
        rows = json.loads(result.output)
        self.assertEqual(len(rows), 6)
        self.assertEqual([r['label'] for r in rows if r['twistable']],
                         ['2', '4'])

    def test_chars_even_modulus(self):
        """Test that an even modulus exits with the usage code."""
        result = self.invoke('chars', '--q', '4')
        self.assertEqual(result.exit_code, 2)
        self.assertIn('Error:', result.output)

    def test_chars_from_config_file(self):
        """Test that the config file sets q and the CSV format."""
        result = self.invoke('--config', SAMPLE, '--log-level', 'WARNING',
                             'chars')
        self.assertEqual(result.exit_code, 0)
        lines = result.output.splitlines()
        self.assertTrue(lines[0].startswith('label,order'))
        self.assertEqual(len(lines), 13)

    def test_missing_config_file(self):
        """Test that an unreadable config file is a usage error."""
        result = self.invoke('--config', self.path('none.conf'), 'chars')
        self.assertEqual(result.exit_code, 2)

    def test_lvalue_cache(self):
        """Test that a cached rerun prints byte-identical output."""
        first = self.invoke('lvalue', '--q', '7', '--psi-label', '2',
                            '--d', '1')
        self.assertEqual(first.exit_code, 0)
        self.assertNotIn('cache_hit', json.loads(first.output))
        self.assertTrue(os.path.exists(self.cache))
        log_file = self.path('rerun.log')
        second = self.invoke('--log-level', 'INFO', '--log-file', log_file,
                             'lvalue', '--q', '7', '--psi-label', '2',
                             '--d', '1')
        self.assertEqual(second.exit_code, 0)
        self.assertEqual(second.output, first.output)
        with open(log_file, encoding='utf-8') as data:
            self.assertIn('Cache hit for q=7', data.read())

    def test_lvalue_cache_csv(self):
        """Test that a cached rerun in CSV matches the first run too."""
        runs = [self.invoke('--format', 'csv', 'lvalue', '--d', '3',
                            '--method', 'formula') for _ in range(2)]
        self.assertEqual([run.exit_code for run in runs], [0, 0])
        self.assertEqual(runs[0].output, runs[1].output)
        self.assertIn('clamped', runs[0].output.splitlines()[0])

    def test_lvalue_no_cache(self):
        """Test that --no-cache leaves the cache file alone."""
        result = self.invoke('lvalue', '--d', '1', '--method', 'formula',
                             '--no-cache')
        self.assertEqual(result.exit_code, 0)
        record = json.loads(result.output)
        self.assertIsNone(record['value_oracle_re'])
        self.assertFalse(os.path.exists(self.cache))

    def test_lvalue_invalid_d(self):
        """Test that a non square-free d exits with code 2."""
        self.assertEqual(self.invoke('lvalue', '--d', '9').exit_code, 2)
        self.assertEqual(self.invoke('lvalue').exit_code, 2)

    def test_log_file(self):
        """Test that --log-file receives the package's records."""
        log_file = self.path('run.log')
        result = self.invoke('--log-level', 'INFO', '--log-file', log_file,
                             'lvalue', '--d', '1', '--method', 'formula')
        self.assertEqual(result.exit_code, 0)
        with open(log_file, encoding='utf-8') as data:
            self.assertIn('Computed q=7', data.read())

    def test_verify_charsum(self):
        """Test a passing experiment and its JSON-lines output."""
        output = self.path('reports.jsonl')
        result = self.invoke('verify', '--experiment', 'charsum', '--q', '7',
                             '--X', '1000', '--u', '1', '--output', output)
        self.assertEqual(result.exit_code, 0)
        with open(output, encoding='utf-8') as data:
            reports = [json.loads(line) for line in data]
        self.assertEqual(len(reports), 1)
        self.assertTrue(reports[0]['pass'])
        self.assertEqual(reports[0]['name'], 'charsum')

    def test_verify_failing_gate(self):
        """Test that a failed gate exits with code 1."""
        result = self.invoke('verify', '--experiment', 'charsum',
                             '--X', '1000', '--K', '1e-9',
                             '--output', self.path('reports.jsonl'))
        self.assertEqual(result.exit_code, 1)

    def test_verify_csv(self):
        """Test CSV reports selected with --format."""
        output = self.path('reports.csv')
        result = self.invoke('--format', 'csv', 'verify', '--experiment',
                             'polya-vinogradov', '--X', '500', '--u', '15',
                             '--output', output)
        self.assertIn(result.exit_code, (0, 1))
        with open(output, encoding='utf-8') as data:
            lines = data.read().splitlines()
        self.assertTrue(lines[0].startswith('name,observed,predicted'))
        self.assertTrue(lines[1].startswith('polya-vinogradov,'))

    def test_verify_empty_scales(self):
        """Test that an empty scale list yields no reports and exit 0."""
        result = self.invoke('verify', '--experiment', 'fourth-moment',
                             '--X-list', '')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output, '')

    def test_verify_fractional_bound(self):
        """Test that a fractional prime-sum bound is a usage error."""
        result = self.invoke('verify', '--experiment', 'prime-sum',
                             '--x', '100.5')
        self.assertEqual(result.exit_code, 2)

    def test_verify_unknown_experiment(self):
        """Test that click refuses an unknown experiment."""
        result = self.invoke('verify', '--experiment', 'riemann')
        self.assertEqual(result.exit_code, 2)

    def test_search(self):
        """Test a search with threshold 1 written to a file."""
        output = self.path('search.json')
        result = self.invoke('search', '--q', '7', '--coeffs', '2=1',
                             '--X', '200', '--tol', '1e-6',
                             '--threshold-mode', 'custom',
                             '--threshold-constant', '0',
                             '--output', output)
        self.assertEqual(result.exit_code, 0)
        with open(output, encoding='utf-8') as data:
            found = json.load(data)
        self.assertEqual(found['threshold'], 1.0)
        self.assertEqual(found['S_size'], len(found['exceedances']))
        self.assertTrue(all(e['value'] > 1 for e in found['exceedances']))

    def test_search_budget(self):
        """Test that a search past the oracle budget exits with code 3."""
        result = self.invoke('search', '--q', '7', '--coeffs', '2=1',
                             '--X', '1e4')
        self.assertEqual(result.exit_code, 3)

    def test_search_bad_coeffs(self):
        """Test that malformed coefficients exit with code 2."""
        result = self.invoke('search', '--coeffs', '2:1', '--X', '200')
        self.assertEqual(result.exit_code, 2)


if __name__ == '__main__':
    unittest.main()
