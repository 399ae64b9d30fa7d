# coding: utf-8
"""
Unit tests for linkcomm.spectral
"""
# stdlib imports
import math
import time
import unittest
import warnings
from unittest import mock


# 3rd party imports
import numpy as np
import scipy.linalg
from scipy.sparse.linalg import ArpackNoConvergence
from hypothesis import given, settings, strategies as st


# local imports
from linkcomm.linkdyn import build_transition
from linkcomm.spectral import (
    StepMode,
    StepPolicy,
    StepFallbackWarning,
    MarkovGenerator,
    NoConvergence,
    Disconnected,
    estimate_lambda2,
    step_bound,
)
from common import (
    TRIANGLE,
    PATH3,
    parse,
    karate,
    les_miserables,
    connected_graphs,
    dense_transition,
)


def generator_of(graph):
    return MarkovGenerator(build_transition(graph))


def dense_lambda2(graph):
    return scipy.linalg.eigvalsh(np.eye(graph.m) - dense_transition(graph))[1]


class MarkovGeneratorTestCase(unittest.TestCase):
    def test_matvec(self):
        graph, _ = parse(TRIANGLE)
        generator = generator_of(graph)
        vector = np.array([1.0, 0.0, 0.0])
        np.testing.assert_allclose(generator.matvec(vector), [0.5, -0.25, -0.25])
        np.testing.assert_allclose(generator.matvec(np.ones(3)), 0.0, atol=1e-15)

    def test_rayleigh(self):
        graph, _ = parse(PATH3)
        generator = generator_of(graph)
        self.assertAlmostEqual(generator.rayleigh(np.array([1.0, -1.0])), 0.5)

    @given(connected_graphs(), st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=100, deadline=None)
    def test_rayleigh_bounds(self, graph, seed):
        vector = np.random.default_rng(seed).standard_normal(graph.m)
        value = generator_of(graph).rayleigh(vector)
        self.assertGreaterEqual(value, -1e-12)
        self.assertLessEqual(value, 1.0 + 1e-12)


class EstimateLambda2TestCase(unittest.TestCase):
    def test_path(self):
        graph, _ = parse(PATH3)
        estimate = estimate_lambda2(generator_of(graph))
        self.assertAlmostEqual(estimate.mixing_time, 2.0, places=12)
        self.assertEqual(estimate.iterations, 0)

    def test_karate(self):
        graph, _ = karate()
        start = time.perf_counter()
        estimate = estimate_lambda2(generator_of(graph))
        self.assertLess(time.perf_counter() - start, 5.0)
        self.assertAlmostEqual(estimate.mixing_time, 15.1203, delta=1e-3)
        self.assertGreater(estimate.iterations, 0)
        self.assertAlmostEqual(estimate.value, dense_lambda2(graph), delta=1e-6)

    def test_les_miserables(self):
        graph, _ = les_miserables()
        self.assertEqual(graph.n, 77)
        estimate = estimate_lambda2(generator_of(graph))
        self.assertAlmostEqual(estimate.mixing_time, 22.6927, delta=1e-3)

    @given(connected_graphs(max_nodes=80, max_edges=150))
    @settings(max_examples=50, deadline=None)
    def test_matches_dense_solver(self, graph):
        estimate = estimate_lambda2(generator_of(graph))
        self.assertAlmostEqual(estimate.value, dense_lambda2(graph), delta=1e-6)

    def test_intra_community_edges(self):
        path = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]
        cases = [
            (path, (1 - math.cos(math.pi / 5)) / 2),
            (path + [(1, 3)], None),
            (path + [(1, 3), (4, 6)], (1 - (1 + math.sqrt(73)) / 12) / 2),
        ]
        values = []
        for pairs, value in cases:
            graph, _ = parse(pairs)
            estimate = estimate_lambda2(generator_of(graph))
            self.assertAlmostEqual(estimate.value, dense_lambda2(graph), delta=1e-6)
            if value is not None:
                self.assertAlmostEqual(estimate.value, value, delta=1e-6)
            values.append(estimate.value)
        self.assertEqual(values, sorted(values))

    def test_deterministic(self):
        graph, _ = karate()
        first = estimate_lambda2(generator_of(graph))
        second = estimate_lambda2(generator_of(graph))
        self.assertEqual(first, second)

    def test_disconnected(self):
        graph, _ = parse([(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
        with self.assertRaises(Disconnected):
            estimate_lambda2(generator_of(graph))

    def test_too_small(self):
        graph, _ = parse([(1, 2)])
        with self.assertRaises(ValueError):
            estimate_lambda2(generator_of(graph))

    def test_no_convergence(self):
        graph, _ = karate()
        failure = ArpackNoConvergence("no convergence", np.array([]), np.array([]))
        with mock.patch("linkcomm.spectral.eigsh", side_effect=failure):
            with self.assertRaises(NoConvergence):
                estimate_lambda2(generator_of(graph))


class StepBoundTestCase(unittest.TestCase):
    def test_fixed(self):
        bound = step_bound(StepPolicy(cap=100))
        self.assertEqual(bound.steps, 100)
        self.assertIsNone(bound.lambda2)
        self.assertFalse(bound.fallback_used)

    def test_spectral_karate(self):
        graph, _ = karate()
        bound = step_bound(StepPolicy(mode=StepMode.SPECTRAL), generator_of(graph))
        self.assertEqual(bound.steps, 16)
        self.assertIsNotNone(bound.lambda2)

    def test_spectral_capped(self):
        graph, _ = karate()
        policy = StepPolicy(mode=StepMode.SPECTRAL, cap=10)
        self.assertEqual(step_bound(policy, generator_of(graph)).steps, 10)

    def test_spectral_path(self):
        graph, _ = parse(PATH3)
        bound = step_bound(StepPolicy(mode=StepMode.SPECTRAL), generator_of(graph))
        self.assertEqual(bound.steps, 2)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            step_bound(StepPolicy(cap=0))
        with self.assertRaises(ValueError):
            step_bound(StepPolicy(mode=StepMode.SPECTRAL))

    def test_fallback(self):
        graph, _ = parse([(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
        policy = StepPolicy(mode=StepMode.SPECTRAL, cap=7)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            bound = step_bound(policy, generator_of(graph))
        self.assertEqual(bound.steps, 7)
        self.assertTrue(bound.fallback_used)
        self.assertTrue(any(issubclass(w.category, StepFallbackWarning) for w in caught))

    def test_no_fallback(self):
        graph, _ = parse([(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
        policy = StepPolicy(mode=StepMode.SPECTRAL, fallback=False)
        with self.assertRaises(Disconnected):
            step_bound(policy, generator_of(graph))


if __name__ == "__main__":
    unittest.main()
