# coding: utf-8
"""Recursive link community detection.

To detect link communities, call uelc() with a Graph and a DetectorConfig:

    partition = uelc(graph, DetectorConfig())
    cover = node_cover_from_links(graph, partition)

Each connected component is detected independently (a walk never leaves its
component).  Within a component the edge set is bipartitioned, the split is
kept if neither side is less dense than the whole, and each side is detected
again in isolation.  A side whose edges fall into several connected pieces
is split into those pieces first.  Edge sets that can't be split, or whose
split is rejected, become link communities.

Results are deterministic for a fixed config: every subtree draws source
links from a random stream derived from (rng_seed, tree path).
"""

__all__ = [
    "uelc",
    "bisect",
    "node_cover_from_links",
]


# stdlib imports
import logging
from typing import Optional


# 3rd party imports
import numpy as np


# local imports
from linkcomm import utils
from linkcomm.graph import (
    Graph,
    EmptyGraph,
    induced_by_edges,
    connected_components,
)
from .types import (
    NodeKind,
    DetectorConfig,
    Community,
    LinkPartition,
    NodeCover,
)
from .functions import (
    Expansion,
    ExpandType,
    density,
    edge_set_density,
    bipartition_once,
    accept_split,
    grow_tree,
)


def _link_expander(graph: Graph, config: DetectorConfig) -> ExpandType:
    def expand(edges: np.ndarray, path) -> Expansion:
        sub = induced_by_edges(graph, edges)
        shape = {
            "edges": sub.graph.m,
            "nodes": sub.graph.n,
            "density": density(sub.graph.n, sub.graph.m),
        }
        pieces = connected_components(sub.graph)
        if len(pieces) > 1:
            return Expansion(
                kind=NodeKind.COMPONENTS,
                children=tuple(sub.edges[piece] for piece in pieces),
                **shape,
            )
        if sub.graph.m < config.min_edges_leaf or sub.graph.n <= 2:
            return Expansion(kind=NodeKind.LEAF, **shape)

        split = bipartition_once(sub, config, utils.derive_rng(config.rng_seed, path))
        if split is None:
            return Expansion(kind=NodeKind.LEAF, **shape)

        inside, outside = sub.edges[split.inside], sub.edges[split.outside]
        left = edge_set_density(graph, inside)
        right = edge_set_density(graph, outside)
        if not accept_split(shape["density"], left, right):
            logging.debug(
                f"rejected split at {path}: D={shape['density']:.4f} "
                f"-> {left:.4f} / {right:.4f}"
            )
            return Expansion(kind=NodeKind.LEAF, steps=split.steps, **shape)
        return Expansion(
            kind=NodeKind.SPLIT,
            steps=split.steps,
            children=(inside, outside),
            **shape,
        )

    return expand


def uelc(graph: Graph, config: Optional[DetectorConfig] = None) -> LinkPartition:
    """Partition every edge of `graph` into link communities.

    Raises:
        EmptyGraph: if the graph has no edges.
    """
    config = config or DetectorConfig()
    if graph.m < 1:
        raise EmptyGraph("link communities need at least one edge")
    if config.seed_trials < 1:
        raise ValueError(f"seed_trials must be at least 1, got {config.seed_trials}")

    tree, members = grow_tree(
        connected_components(graph),
        _link_expander(graph, config),
        threads=config.threads,
    )

    labels = np.full(graph.m, -1, dtype=np.int64)
    leaves = [node for node in tree if node.kind is NodeKind.LEAF]
    communities = []
    for leaf, edges in zip(leaves, members):
        labels[edges] = leaf.community
        communities.append(
            Community(
                label=leaf.community,
                members=edges,
                edges=leaf.edges,
                nodes=leaf.nodes,
                density=leaf.density,
            )
        )
    assert (labels >= 0).all()
    logging.info(f"Detected {len(communities)} link communities over m={graph.m}")
    return LinkPartition(labels=labels, communities=tuple(communities), tree=tree)


def _cover(graph: Graph, labels: np.ndarray) -> NodeCover:
    """Node memberships induced by edge labels; label -1 marks unlabeled edges."""
    memberships = [set() for _ in range(graph.n)]
    for (u, v), label in zip(graph.edges.tolist(), labels.tolist()):
        if label < 0:
            continue
        memberships[u].add(label)
        memberships[v].add(label)
    return NodeCover.from_sets(memberships)


def node_cover_from_links(graph: Graph, partition: LinkPartition) -> NodeCover:
    """Node i joins community c iff one of its edges is labeled c."""
    if len(partition.labels) != graph.m:
        raise ValueError(
            f"partition labels {len(partition.labels)} edges, graph has {graph.m}"
        )
    cover = _cover(graph, partition.labels)
    isolated = cover.unassigned()
    if isolated:
        logging.info(f"{len(isolated)} isolated node(s) belong to no community")
    return cover


def bisect(graph: Graph, config: Optional[DetectorConfig] = None) -> NodeCover:
    """Single bipartition of the largest connected component, as a two-community cover.

    No density test is applied.  Nodes outside the largest component have
    no membership; if the walk can't split the component, it is one community.
    """
    config = config or DetectorConfig()
    if graph.m < 1:
        raise EmptyGraph("bipartition needs at least one edge")
    largest = max(connected_components(graph), key=len)
    sub = induced_by_edges(graph, largest)

    labels = np.full(graph.m, -1, dtype=np.int64)
    labels[largest] = 0
    if sub.graph.m >= 2:
        split = bipartition_once(sub, config, utils.derive_rng(config.rng_seed, (0,)))
        if split is not None:
            labels[sub.edges[split.outside]] = 1
    return _cover(graph, labels)
