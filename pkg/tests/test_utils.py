# coding: utf-8
"""
Unit tests for linkcomm.utils
"""
import doctest
import unittest

from linkcomm import utils


class DeriveRngTestCase(unittest.TestCase):
    def test_same_path_same_stream(self):
        a = utils.derive_rng(5, (0, 2)).random(4)
        b = utils.derive_rng(5, (0, 2)).random(4)
        self.assertEqual(a.tolist(), b.tolist())

    def test_paths_independent(self):
        a = utils.derive_rng(5, (0, 1)).random(4)
        b = utils.derive_rng(5, (1, 0)).random(4)
        c = utils.derive_rng(6, (0, 1)).random(4)
        self.assertNotEqual(a.tolist(), b.tolist())
        self.assertNotEqual(a.tolist(), c.tolist())

    def test_derive_seed(self):
        self.assertEqual(utils.derive_seed(1, (2, 3)), utils.derive_seed(1, (2, 3)))
        self.assertNotEqual(utils.derive_seed(1, (2, 3)), utils.derive_seed(1, (3, 2)))
        self.assertGreaterEqual(utils.derive_seed(0), 0)


class CumulativeDistributionTestCase(unittest.TestCase):
    def test_empty(self):
        self.assertEqual(utils.cumulative_distribution([]), ())

    def test_single_value(self):
        self.assertEqual(utils.cumulative_distribution([7, 7, 7]), ((7, 1.0),))

    def test_at_least(self):
        dist = utils.cumulative_distribution([3, 1, 2, 2])
        self.assertEqual(dist, ((1, 1.0), (2, 0.75), (3, 0.25)))


def load_tests(loader, tests, ignore):
    tests.addTests(doctest.DocTestSuite(utils))
    return tests


if __name__ == "__main__":
    unittest.main()
