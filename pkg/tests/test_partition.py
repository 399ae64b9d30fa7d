# coding: utf-8
"""
Unit tests for linkcomm.partition
"""
# stdlib imports
import time
import unittest


# 3rd party imports
import numpy as np
from hypothesis import given, settings, strategies as st


# local imports
from linkcomm.graph import Graph, GraphError, EmptyGraph, induced_by_edges
from linkcomm.linkdyn import EdgeDistribution, stationary_distribution
from linkcomm.spectral import StepMode, StepPolicy
from linkcomm.partition import (
    NodeKind,
    DetectorConfig,
    density,
    link_density,
    edge_set_density,
    above_cutoff,
    ulc,
    elc,
    accept_split,
    bipartition_once,
    uelc,
    bisect,
    node_cover_from_links,
    LinkPartition,
)
from linkcomm.bench import BknConfig, generate_bkn
from linkcomm import utils
from common import (
    TRIANGLE,
    parse,
    clique,
    two_cliques,
    karate,
    les_miserables,
    labelset,
    random_tree,
    random_connected,
    connected_graphs,
)


KARATE_OVERLAP = {"3", "9", "14", "20", "31", "32"}
SPECTRAL = DetectorConfig(policy=StepPolicy(mode=StepMode.SPECTRAL))
TWO_TRIANGLES = TRIANGLE + [(3, 4), (4, 5), (5, 6), (4, 6)]


def edges_among(graph, labels, members):
    """EdgeIds with both endpoints labeled in `members`."""
    ids = {labels.id_of(str(member)) for member in members}
    return [
        e for e, (u, v) in enumerate(graph.edges.tolist()) if u in ids and v in ids
    ]


class DensityTestCase(unittest.TestCase):
    def test_cliques(self):
        for q in range(3, 11):
            graph, _ = parse(clique(q))
            self.assertEqual(link_density(graph), 1.0)

    def test_trees(self):
        for seed in range(50):
            graph = random_tree(3 + seed, seed)
            self.assertEqual(link_density(graph), 0.0)

    def test_two_nodes(self):
        self.assertEqual(density(2, 1), 0.0)
        self.assertEqual(density(1, 0), 0.0)

    def test_edge_set_density(self):
        graph, _ = parse(two_cliques(4))
        sub = induced_by_edges(graph, range(6))
        self.assertEqual(edge_set_density(graph, np.arange(6)), link_density(sub))


class ExtractTestCase(unittest.TestCase):
    def test_above_cutoff_tolerance(self):
        values = np.array([1.0, 1.0 - 1e-12, 0.999])
        self.assertEqual(above_cutoff(values, 1.0, 1e-9).tolist(), [True, True, False])

    def test_triangle_one_step(self):
        graph, _ = parse(TRIANGLE)
        split = elc(ulc(graph, 0, 1))
        self.assertEqual(split.inside.tolist(), [0])
        self.assertEqual(split.outside.tolist(), [1, 2])
        self.assertEqual((split.seed, split.steps), (0, 1))
        self.assertFalse(split.degenerate)

    def test_uniform_is_degenerate(self):
        split = elc(stationary_distribution(7))
        self.assertEqual(split.inside.size, 7)
        self.assertTrue(split.degenerate)

    def test_nearly_uniform_ties(self):
        probs = np.full(4, 0.25) + np.array([1e-13, -1e-13, 1e-13, -1e-13])
        self.assertTrue(elc(EdgeDistribution(probs=probs, step=5)).degenerate)

    def test_ulc_errors(self):
        graph, _ = parse(TRIANGLE)
        with self.assertRaises(ValueError):
            ulc(graph, 0, 0)
        disjoint, _ = parse([(1, 2), (3, 4)])
        with self.assertRaises(GraphError):
            ulc(disjoint, 0, 3)

    def test_two_triangles_every_seed(self):
        graph, labels = parse(TWO_TRIANGLES)
        left = edges_among(graph, labels, (1, 2, 3))
        right = edges_among(graph, labels, (4, 5, 6))
        for own, other in ((left, right), (right, left)):
            for seed in own:
                split = elc(ulc(graph, seed, 100))
                self.assertTrue(set(own) <= set(split.inside.tolist()))
                self.assertEqual(set(split.outside.tolist()), set(other))

    def test_bridge_seed_mixes(self):
        for q in range(4, 9):
            graph, labels = parse(two_cliques(q))
            (bridge,) = edges_among(graph, labels, (q - 1, q))
            self.assertTrue(elc(ulc(graph, bridge, 100)).degenerate)

    @given(connected_graphs(), st.integers(min_value=1, max_value=20))
    @settings(max_examples=100, deadline=None)
    def test_seed_inside(self, graph, steps):
        seed = graph.m - 1
        self.assertIn(seed, elc(ulc(graph, seed, steps)).inside.tolist())


class AcceptSplitTestCase(unittest.TestCase):
    def test_rules(self):
        self.assertTrue(accept_split(0.5, 0.6, 0.7))
        self.assertTrue(accept_split(0.5, 0.5, 0.5))
        self.assertFalse(accept_split(0.5, 0.4, 1.0))


class BipartitionOnceTestCase(unittest.TestCase):
    def test_clique_rejects(self):
        graph, _ = parse(clique(7))
        sub = induced_by_edges(graph, range(graph.m))
        self.assertIsNone(bipartition_once(sub, DetectorConfig(), utils.derive_rng(0)))

    def test_seed_trials_validated(self):
        graph, _ = parse(clique(4))
        sub = induced_by_edges(graph, range(graph.m))
        with self.assertRaises(ValueError):
            bipartition_once(sub, DetectorConfig(seed_trials=0), utils.derive_rng(0))

    def test_two_triangles_kept_whole(self):
        graph, labels = parse(TWO_TRIANGLES)
        sub = induced_by_edges(graph, range(graph.m))
        left = set(edges_among(graph, labels, (1, 2, 3)))
        right = set(edges_among(graph, labels, (4, 5, 6)))
        config = DetectorConfig(seed_trials=3)
        for rng_seed in range(30):
            split = bipartition_once(sub, config, utils.derive_rng(rng_seed))
            self.assertIsNotNone(split)
            inside, outside = set(split.inside.tolist()), set(split.outside.tolist())
            self.assertTrue(
                (left <= inside and right <= outside)
                or (right <= inside and left <= outside)
            )


class UelcTestCase(unittest.TestCase):
    def test_single_edge(self):
        graph, _ = parse([(1, 2)])
        partition = uelc(graph)
        self.assertEqual(partition.count, 1)
        self.assertEqual(partition.communities[0].density, 0.0)
        self.assertEqual(partition.labels.tolist(), [0])

    def test_triangle(self):
        graph, _ = parse(TRIANGLE)
        self.assertEqual(uelc(graph).count, 1)

    def test_clique(self):
        graph, _ = parse(clique(7))
        partition = uelc(graph)
        self.assertEqual(partition.count, 1)
        self.assertEqual(partition.communities[0].density, 1.0)

    def test_empty(self):
        with self.assertRaises(EmptyGraph):
            uelc(Graph.from_pairs(3, []))

    def test_two_cliques(self):
        for q in range(4, 9):
            graph, labels = parse(two_cliques(q))
            bridge_ends = {labels.id_of(str(q - 1)), labels.id_of(str(q))}
            for rng_seed in range(20):
                partition = uelc(graph, DetectorConfig(seed_trials=3, rng_seed=rng_seed))
                self.assertEqual(partition.count, 2)
                for offset in (0, q):
                    inner = edges_among(graph, labels, range(offset, offset + q))
                    self.assertEqual(len(set(partition.labels[inner].tolist())), 1)
                cover = node_cover_from_links(graph, partition)
                self.assertTrue(cover.overlap() <= bridge_ends)

    def test_two_cliques_bridge_drawn(self):
        # rng_seed 10 draws the bridge as the root's only seed link.
        for q in range(4, 9):
            graph, _ = parse(two_cliques(q))
            partition = uelc(graph, DetectorConfig(rng_seed=10))
            self.assertEqual(partition.count, 1)
            self.assertIs(partition.tree[0].kind, NodeKind.LEAF)

    def test_shared_vertex_cover(self):
        graph, labels = parse(TRIANGLE + [(3, 4), (4, 5), (3, 5)])
        communities = np.zeros(graph.m, dtype=np.int64)
        communities[edges_among(graph, labels, (3, 4, 5))] = 1
        cover = node_cover_from_links(
            graph, LinkPartition(labels=communities, communities=(), tree=())
        )
        shared = labels.id_of("3")
        self.assertEqual(cover.overlap(), frozenset({shared}))
        self.assertEqual(cover.memberships[shared], frozenset({0, 1}))
        for node in set(range(graph.n)) - {shared}:
            self.assertEqual(len(cover.memberships[node]), 1)

    def test_components(self):
        graph, _ = parse(clique(4) + clique(4, offset=10))
        partition = uelc(graph)
        roots = [node for node in partition.tree if node.parent is None]
        self.assertEqual(len(roots), 2)
        self.assertEqual(partition.count, 2)

    def test_threads_deterministic(self):
        pairs = [
            (u + 100 * k, v + 100 * k) for k in range(4) for u, v in two_cliques(4)
        ]
        graph, _ = parse(pairs)
        config = DetectorConfig(seed_trials=2, rng_seed=9)
        serial = uelc(graph, config)
        threaded = uelc(graph, config._replace(threads=4))
        self.assertEqual(serial.labels.tolist(), threaded.labels.tolist())
        self.assertEqual(serial.tree, threaded.tree)

    def test_deterministic(self):
        graph = random_connected(40, 60, seed=2)
        first = uelc(graph, DetectorConfig(rng_seed=4))
        second = uelc(graph, DetectorConfig(rng_seed=4))
        self.assertEqual(first.labels.tolist(), second.labels.tolist())

    @given(connected_graphs(), st.integers(min_value=0, max_value=1000))
    @settings(max_examples=50, deadline=None)
    def test_tree_invariants(self, graph, rng_seed):
        partition = uelc(graph, DetectorConfig(rng_seed=rng_seed))
        self.assertTrue((partition.labels >= 0).all())
        self.assertEqual(
            sorted(set(partition.labels.tolist())), list(range(partition.count))
        )
        self.assertEqual(sum(c.edges for c in partition.communities), graph.m)

        for node in partition.tree:
            self.assertEqual(node.index, partition.tree.index(node))
            children = partition.children(node.index)
            if node.kind is NodeKind.SPLIT:
                self.assertEqual(len(children), 2)
                for child in children:
                    self.assertGreaterEqual(child.density, node.density)
            elif node.kind is NodeKind.LEAF:
                self.assertEqual(children, ())
                self.assertIsNotNone(node.community)

    def test_node_cover_isolated(self):
        graph = Graph.from_pairs(5, [(0, 1), (1, 2), (0, 2)])
        cover = node_cover_from_links(graph, uelc(graph))
        self.assertEqual(cover.unassigned(), frozenset({3, 4}))
        self.assertEqual(cover.members(0), frozenset({0, 1, 2}))

    def test_time_roughly_linear(self):
        def elapsed(half):
            graph, _ = generate_bkn(BknConfig(x=half, y=half, z=0, k_expected=8, seed=1))
            start = time.perf_counter()
            uelc(graph)
            return time.perf_counter() - start

        elapsed(100)
        self.assertLess(elapsed(800) / elapsed(400), 3.0)


class BisectTestCase(unittest.TestCase):
    def test_two_communities(self):
        graph, labels = parse(two_cliques(5))
        cover = bisect(graph, DetectorConfig(seed_trials=3))
        self.assertEqual(len(cover.communities), 2)
        self.assertEqual(len(cover.overlap()), 1)

    def test_outside_largest_component(self):
        graph, labels = parse(clique(5) + [(20, 21)])
        cover = bisect(graph)
        self.assertEqual(
            labelset(labels, cover.unassigned()), {"20", "21"}
        )

    def test_karate_first_split(self):
        graph, labels = karate()
        hits = 0
        for seed in range(20):
            cover = bisect(graph, SPECTRAL._replace(rng_seed=seed))
            hits += labelset(labels, cover.overlap()) == KARATE_OVERLAP
        self.assertGreaterEqual(hits, 15)

    def test_karate_four_communities(self):
        graph, _ = karate()
        counts = {
            uelc(graph, SPECTRAL._replace(rng_seed=seed)).count for seed in range(20)
        }
        self.assertIn(4, counts)

    def test_les_miserables_five_communities(self):
        graph, _ = les_miserables()
        counts = {
            uelc(graph, SPECTRAL._replace(rng_seed=seed)).count for seed in range(20)
        }
        self.assertIn(5, counts)


if __name__ == "__main__":
    unittest.main()
