# coding: utf-8
"""
Unit tests for linkcomm.nodecomm
"""
# stdlib imports
import unittest


# 3rd party imports
import numpy as np
from hypothesis import given, settings, strategies as st


# local imports
from linkcomm.graph import Graph
from linkcomm.linkdyn import stationary_distribution, unit_distribution
from linkcomm.partition import DetectorConfig, NodeKind
from linkcomm.nodecomm import (
    NodeDistribution,
    node_probability,
    node_bipartition,
    majority_refine,
    uelc_nodes,
)
from common import TRIANGLE, parse, clique, two_cliques, connected_graphs


class NodeProbabilityTestCase(unittest.TestCase):
    @given(connected_graphs())
    @settings(max_examples=100, deadline=None)
    def test_stationary_matches_cutoff(self, graph):
        distribution = node_probability(graph, stationary_distribution(graph.m))
        np.testing.assert_allclose(
            distribution.probs, graph.degrees / (2 * graph.m), rtol=0, atol=1e-12
        )
        np.testing.assert_allclose(
            distribution.probs, distribution.cutoff, rtol=0, atol=1e-12
        )
        self.assertAlmostEqual(distribution.cutoff.sum(), 1.0, places=14)

    def test_unit(self):
        graph, _ = parse(TRIANGLE)
        distribution = node_probability(graph, unit_distribution(3, 0))
        u, v = graph.edges[0]
        expected = np.zeros(3)
        expected[[u, v]] = 0.5
        np.testing.assert_allclose(distribution.probs, expected)

    def test_mismatch(self):
        graph, _ = parse(TRIANGLE)
        with self.assertRaises(ValueError):
            node_probability(graph, unit_distribution(4, 0))


class NodeBipartitionTestCase(unittest.TestCase):
    def test_threshold(self):
        distribution = NodeDistribution(
            probs=np.array([0.4, 0.1, 0.3, 0.2]),
            cutoff=np.array([0.3, 0.2, 0.3, 0.2 + 1e-15]),
        )
        inside, outside = node_bipartition(distribution)
        self.assertEqual(inside.tolist(), [0, 2, 3])
        self.assertEqual(outside.tolist(), [1])


def cut_size(graph, assignment):
    u, v = graph.edges.T
    return int(np.count_nonzero(assignment[u] != assignment[v]))


class MajorityRefineTestCase(unittest.TestCase):
    def setUp(self):
        self.graph, self.labels = parse(two_cliques(5))
        self.truth = np.array(
            [0 if int(label) < 5 else 1 for label in self.labels.labels]
        )

    def test_corrects_mislabeled_node(self):
        assignment = self.truth.copy()
        assignment[self.labels.id_of("2")] = 1
        refined = majority_refine(self.graph, assignment, max_sweeps=1)
        self.assertEqual(refined.tolist(), self.truth.tolist())

    def test_fixed_point(self):
        refined = majority_refine(self.graph, self.truth)
        self.assertEqual(refined.tolist(), self.truth.tolist())

    def test_tie_stays(self):
        graph = Graph.from_pairs(4, [(0, 1), (1, 2), (2, 3)])
        refined = majority_refine(graph, [0, 0, 1, 1])
        self.assertEqual(refined.tolist(), [0, 0, 1, 1])

    def test_input_untouched(self):
        assignment = self.truth.copy()
        assignment[0] = 1 - assignment[0]
        before = assignment.tolist()
        majority_refine(self.graph, assignment)
        self.assertEqual(assignment.tolist(), before)

    @given(connected_graphs(), st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=100, deadline=None)
    def test_each_sweep_shrinks_cut(self, graph, seed):
        assignment = np.random.default_rng(seed).integers(0, 2, size=graph.n)
        previous = majority_refine(graph, assignment, max_sweeps=0)
        self.assertEqual(previous.tolist(), assignment.tolist())
        for sweeps in range(1, graph.m + 2):
            current = majority_refine(graph, assignment, max_sweeps=sweeps)
            if current.tolist() == previous.tolist():
                break
            self.assertLess(cut_size(graph, current), cut_size(graph, previous))
            previous = current
        else:
            self.fail("no fixed point reached")

    def test_invalid(self):
        with self.assertRaises(ValueError):
            majority_refine(self.graph, [0, 1])
        with self.assertRaises(ValueError):
            majority_refine(self.graph, [2] * self.graph.n)


class UelcNodesTestCase(unittest.TestCase):
    def test_two_cliques(self):
        graph, labels = parse(two_cliques(5))
        partition = uelc_nodes(graph, DetectorConfig(seed_trials=3))
        self.assertEqual(partition.count, 2)
        groups = {}
        for node, community in enumerate(partition.labels.tolist()):
            groups.setdefault(community, set()).add(int(labels.label_of(node)))
        self.assertEqual(
            sorted(groups.values(), key=min), [set(range(5)), set(range(5, 10))]
        )

    def test_clique(self):
        graph, _ = parse(clique(7))
        partition = uelc_nodes(graph)
        self.assertEqual(partition.count, 1)
        self.assertEqual(partition.communities[0].nodes, 7)

    def test_isolated_nodes(self):
        graph = Graph.from_pairs(6, [(0, 1), (1, 2), (0, 2), (3, 4)])
        partition = uelc_nodes(graph)
        self.assertEqual(partition.count, 3)
        self.assertEqual(len(set(partition.labels[[0, 1, 2]].tolist())), 1)
        self.assertEqual(partition.labels[3], partition.labels[4])
        self.assertNotIn(partition.labels[5], partition.labels[:5].tolist())

    def test_no_nodes(self):
        with self.assertRaises(ValueError):
            uelc_nodes(Graph.from_pairs(0, []))

    @given(connected_graphs())
    @settings(max_examples=30, deadline=None)
    def test_partition_invariants(self, graph):
        partition = uelc_nodes(graph)
        self.assertTrue((partition.labels >= 0).all())
        self.assertEqual(sum(c.nodes for c in partition.communities), graph.n)
        for node in partition.tree:
            if node.kind is NodeKind.SPLIT:
                for child in partition.tree:
                    if child.parent == node.index:
                        self.assertGreaterEqual(child.density, node.density)


if __name__ == "__main__":
    unittest.main()
