# coding: utf-8
""" Reusable test elements """
# stdlib imports
import io
from typing import Iterable, Tuple


# 3rd party imports
import numpy as np
import networkx as nx
from hypothesis import strategies as st


# local imports
from linkcomm.graph import Graph, NodeLabelMap, load_edge_list


def edge_lines(pairs: Iterable[Tuple]) -> str:
    return "".join(f"{u} {v}\n" for u, v in pairs)


def parse(pairs: Iterable[Tuple]) -> Tuple[Graph, NodeLabelMap]:
    """Graph and labels from (label, label) pairs, through the edge-list reader."""
    return load_edge_list(io.StringIO(edge_lines(pairs)))


def label_pairs(graph: Graph, labels: NodeLabelMap) -> set:
    """Edges as frozensets of labels, independent of node id assignment."""
    return {
        frozenset((labels.label_of(u), labels.label_of(v)))
        for u, v in graph.edges.tolist()
    }


def labelset(labels: NodeLabelMap, nodes) -> set:
    return {labels.label_of(node) for node in nodes}


TRIANGLE = [(1, 2), (2, 3), (1, 3)]
PATH3 = [(1, 2), (2, 3)]
STAR = [(0, leaf) for leaf in range(1, 6)]


def clique(q: int, offset: int = 0):
    return [(offset + i, offset + j) for i in range(q) for j in range(i + 1, q)]


def two_cliques(q: int = 5):
    """Two K_q on labels 0..q-1 and q..2q-1 joined by the bridge (q-1, q)."""
    return clique(q) + clique(q, offset=q) + [(q - 1, q)]


def karate() -> Tuple[Graph, NodeLabelMap]:
    """Zachary karate club with the usual 1-based member labels."""
    return parse((u + 1, v + 1) for u, v in nx.karate_club_graph().edges())


def les_miserables() -> Tuple[Graph, NodeLabelMap]:
    """Les Misérables co-appearance network, unweighted."""
    return parse(nx.les_miserables_graph().edges())


def random_connected(n: int, extra: int, seed: int) -> Graph:
    """Random tree on n nodes plus up to `extra` random non-loop edges."""
    rng = np.random.default_rng(seed)
    pairs = [(i, int(rng.integers(0, i))) for i in range(1, n)]
    for _ in range(extra):
        u, v = rng.choice(n, size=2, replace=False)
        pairs.append((int(u), int(v)))
    return Graph.from_pairs(n, pairs)


def random_tree(n: int, seed: int) -> Graph:
    return random_connected(n, 0, seed)


@st.composite
def connected_graphs(draw, max_nodes: int = 60, max_edges: int = 60):
    """Hypothesis strategy for small connected simple graphs."""
    n = draw(st.integers(min_value=3, max_value=min(max_nodes, max_edges + 1)))
    extra = draw(st.integers(min_value=0, max_value=max_edges - (n - 1)))
    seed = draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
    return random_connected(n, extra, seed)


def dense_transition(graph: Graph) -> np.ndarray:
    """p(e_ij → e_jk) = 1/(2 d_j) summed over shared endpoints, by enumeration."""
    m = graph.m
    degrees = graph.degrees
    dense = np.zeros((m, m))
    for e, (i, j) in enumerate(graph.edges.tolist()):
        for f, (k, l) in enumerate(graph.edges.tolist()):
            for node in {i, j} & {k, l}:
                dense[e, f] += 1.0 / (2 * degrees[node])
    return dense


@st.composite
def well_connected_graphs(draw, max_nodes: int = 20, max_edges: int = 60):
    """Connected graphs with at least n extra edges over a spanning tree."""
    n = draw(st.integers(min_value=3, max_value=max_nodes))
    extra = draw(st.integers(min_value=n, max_value=max_edges - (n - 1)))
    seed = draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
    return random_connected(n, extra, seed)
