# coding: utf-8
"""Non-overlapping node communities from link walk dynamics.

The probability that a link walk reaches node i on its next move is

    ψ^l(i) = ½ Σ_{j ∈ Neb(i)} α^l(e_ij)

and in the global mixing state α^∞ = 1/m this becomes ψ^∞(i) = d_i / 2m.
Nodes with ψ^l(i) ≥ ψ^∞(i) form the seed's side of a node bipartition.
A majority sweep then moves every node that sits apart from most of its
neighbors, and the sides are detected again recursively, stopping where a
side would be less dense than the node set it came from.
"""
from __future__ import annotations


__all__ = [
    "NodeDistribution",
    "NodeBisection",
    "NodePartition",
    "node_probability",
    "node_bipartition",
    "majority_refine",
    "bipartition_nodes_once",
    "uelc_nodes",
]


# stdlib imports
import logging
from typing import NamedTuple, Tuple, Optional, Sequence


# 3rd party imports
import numpy as np


# local imports
from linkcomm import utils
from linkcomm.graph import (
    Graph,
    Subgraph,
    induced_by_nodes,
    node_components,
)
from linkcomm.linkdyn import EdgeDistribution, build_transition
from linkcomm.spectral import MarkovGenerator, step_bound
from linkcomm.partition.types import NodeKind, DetectorConfig, Community, TreeNode
from linkcomm.partition.functions import (
    Expansion,
    ExpandType,
    density,
    above_cutoff,
    ulc,
    accept_split,
    grow_tree,
)


#  Majority refinement gives up after this many sweeps without a fixed point.
MAX_SWEEPS = 100


class NodeDistribution(NamedTuple):
    """Node arrival probabilities and their stationary cutoffs.

    Attributes:
        probs: ψ^l, one entry per node.
        cutoff: ψ^∞(i) = d_i / 2m.
    """

    probs: np.ndarray
    cutoff: np.ndarray


class NodeBisection(NamedTuple):
    """A refined two-way node split (local node ids)."""

    seed: int
    steps: int
    inside: np.ndarray
    outside: np.ndarray


class NodePartition(NamedTuple):
    """Disjoint node communities covering every node.

    Attributes:
        labels: community label of each node id.
        communities: one Community per label, in label order.
        tree: flat recursion tree, parents before children.
    """

    labels: np.ndarray
    communities: Tuple[Community, ...]
    tree: Tuple[TreeNode, ...]

    @property
    def count(self) -> int:
        return len(self.communities)


def node_probability(graph: Graph, alpha: EdgeDistribution) -> NodeDistribution:
    """ψ^l from α^l, with the stationary cutoff ψ^∞."""
    if alpha.m != graph.m:
        raise ValueError(f"distribution over {alpha.m} edges, graph has {graph.m}")
    half = 0.5 * alpha.probs
    probs = np.bincount(graph.edges[:, 0], weights=half, minlength=graph.n)
    probs += np.bincount(graph.edges[:, 1], weights=half, minlength=graph.n)
    cutoff = graph.degrees / (2.0 * graph.m)
    return NodeDistribution(probs=probs, cutoff=cutoff)


def node_bipartition(
    distribution: NodeDistribution, mixing_tol: float = 1e-9
) -> Tuple[np.ndarray, np.ndarray]:
    """(inside, outside) node ids: ψ^l(i) ≥ ψ^∞(i) is inside, ties included."""
    inside = above_cutoff(distribution.probs, distribution.cutoff, mixing_tol)
    return np.flatnonzero(inside), np.flatnonzero(~inside)


def majority_refine(
    graph: Graph, assignment: Sequence[int], max_sweeps: int = MAX_SWEEPS
) -> np.ndarray:
    """Move nodes to the side holding strictly more of their neighbors.

    Sweeps visit nodes in ascending id and apply each move at once.  Every
    move shrinks the cut, so sweeps reach a fixed point; an exact tie
    never moves a node.

    Args:
        assignment: 0/1 side of each node.
    """
    labels = np.array(assignment, dtype=np.int64)
    if labels.shape != (graph.n,) or not np.isin(labels, (0, 1)).all():
        raise ValueError("majority refinement needs a 0/1 label for every node")

    for sweep in range(max_sweeps):
        moved = 0
        for node in range(graph.n):
            neighbors = graph.neighbors_of(node)
            same = np.count_nonzero(labels[neighbors] == labels[node])
            if neighbors.size - same > same:
                labels[node] = 1 - labels[node]
                moved += 1
        if not moved:
            break
        logging.debug(f"majority sweep {sweep}: moved {moved} node(s)")
    return labels


def _induced_density(graph: Graph, nodes: np.ndarray) -> float:
    """D_s of the subgraph induced by `nodes`."""
    member = np.zeros(graph.n, dtype=bool)
    member[nodes] = True
    internal = np.count_nonzero(member[graph.edges[:, 0]] & member[graph.edges[:, 1]])
    return density(len(nodes), internal)


def bipartition_nodes_once(
    sub: Subgraph, config: DetectorConfig, rng: np.random.Generator
) -> Optional[NodeBisection]:
    """Best refined node bipartition over `config.seed_trials` source links.

    Returns:
        NodeBisection, or None if every candidate left one side empty.
    """
    graph = sub.graph
    transition = build_transition(graph)
    bound = step_bound(config.policy, MarkovGenerator(transition))
    seeds = rng.choice(graph.m, size=min(config.seed_trials, graph.m), replace=False)

    best, best_score = None, -np.inf
    for seed in seeds.tolist():
        alpha = ulc(sub, seed, bound.steps, transition=transition)
        inside, outside = node_bipartition(
            node_probability(graph, alpha), config.mixing_tol
        )
        if inside.size == 0 or outside.size == 0:
            continue
        assignment = np.zeros(graph.n, dtype=np.int64)
        assignment[outside] = 1
        refined = majority_refine(graph, assignment)
        inside, outside = np.flatnonzero(refined == 0), np.flatnonzero(refined == 1)
        if inside.size == 0 or outside.size == 0:
            continue
        score = min(_induced_density(graph, inside), _induced_density(graph, outside))
        if score > best_score:
            best = NodeBisection(seed=seed, steps=bound.steps, inside=inside,
                                 outside=outside)
            best_score = score
    return best


def _node_expander(graph: Graph, config: DetectorConfig) -> ExpandType:
    def expand(nodes: np.ndarray, path) -> Expansion:
        sub = induced_by_nodes(graph, nodes)
        shape = {
            "edges": sub.graph.m,
            "nodes": sub.graph.n,
            "density": density(sub.graph.n, sub.graph.m),
        }
        pieces = node_components(sub.graph)
        if len(pieces) > 1:
            return Expansion(
                kind=NodeKind.COMPONENTS,
                children=tuple(sub.nodes[piece] for piece in pieces),
                **shape,
            )
        if sub.graph.m < config.min_edges_leaf or sub.graph.n <= 2:
            return Expansion(kind=NodeKind.LEAF, **shape)

        split = bipartition_nodes_once(
            sub, config, utils.derive_rng(config.rng_seed, path)
        )
        if split is None:
            return Expansion(kind=NodeKind.LEAF, **shape)

        inside, outside = sub.nodes[split.inside], sub.nodes[split.outside]
        left = _induced_density(graph, inside)
        right = _induced_density(graph, outside)
        if not accept_split(shape["density"], left, right):
            return Expansion(kind=NodeKind.LEAF, steps=split.steps, **shape)
        return Expansion(
            kind=NodeKind.SPLIT,
            steps=split.steps,
            children=(inside, outside),
            **shape,
        )

    return expand


def uelc_nodes(graph: Graph, config: Optional[DetectorConfig] = None) -> NodePartition:
    """Partition every node of `graph` into non-overlapping communities.

    Isolated nodes become singleton communities.
    """
    config = config or DetectorConfig()
    if graph.n < 1:
        raise ValueError("node communities need at least one node")

    tree, members = grow_tree(
        node_components(graph), _node_expander(graph, config), threads=config.threads
    )

    labels = np.full(graph.n, -1, dtype=np.int64)
    leaves = [node for node in tree if node.kind is NodeKind.LEAF]
    communities = []
    for leaf, nodes in zip(leaves, members):
        labels[nodes] = leaf.community
        communities.append(
            Community(
                label=leaf.community,
                members=nodes,
                edges=leaf.edges,
                nodes=leaf.nodes,
                density=leaf.density,
            )
        )
    logging.info(f"Detected {len(communities)} node communities over n={graph.n}")
    return NodePartition(labels=labels, communities=tuple(communities), tree=tree)
