# coding: utf-8
"""Base functions used by partition.api to bipartition edge sets and grow the
recursion tree.

One bipartition runs in two phases.  The unfold phase (ulc) starts a link
walk on a source link and propagates it l steps; links inside the source's
community collect more probability than links outside, because the paths
between communities are bottlenecks.  The extract phase (elc) cuts the
distribution at the global mixing value ε = 1/m.

Whether a split is kept depends on partition density

    D_s = (m_s - (n_s - 1)) / (n_s (n_s - 1) / 2 - (n_s - 1))

which is 0 for a tree and 1 for a clique: a split is rejected when either
side is less dense than the edge set it came from.
"""
from __future__ import annotations


__all__ = [
    "Expansion",
    "density",
    "link_density",
    "edge_set_density",
    "above_cutoff",
    "ulc",
    "elc",
    "bipartition_once",
    "accept_split",
    "grow_tree",
]


# stdlib imports
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import (
    NamedTuple,
    Tuple,
    List,
    Sequence,
    Callable,
    Optional,
    Union,
)


# 3rd party imports
import numpy as np


# local imports
from linkcomm.graph import Graph, GraphError, Subgraph, connected_components
from linkcomm.linkdyn import (
    LinkTransition,
    EdgeDistribution,
    build_transition,
    unit_distribution,
    propagate,
)
from linkcomm.spectral import MarkovGenerator, step_bound
from .types import NodeKind, DetectorConfig, LinkBipartition, TreeNode


class Expansion(NamedTuple):
    """What the detector did with one member set; consumed by grow_tree().

    Attributes:
        kind: SPLIT, COMPONENTS, or LEAF.
        edges: m_s of the member set.
        nodes: n_s of the member set.
        density: D_s of the member set.
        steps: walk length, if a bipartition was attempted.
        children: member sets to expand next (empty for leaves).
    """

    kind: NodeKind
    edges: int
    nodes: int
    density: float
    steps: Optional[int] = None
    children: Tuple[np.ndarray, ...] = ()


ExpandType = Callable[[np.ndarray, Tuple[int, ...]], Expansion]


def density(nodes: int, edges: int) -> float:
    """Partition density D_s of `edges` links spanning `nodes` nodes.

    D_s = 0 by convention when n_s ≤ 2.  Negative for edge sets sparser than
    a tree on their nodes (i.e. disconnected ones).
    """
    if nodes <= 2:
        return 0.0
    return (edges - (nodes - 1)) / (nodes * (nodes - 1) / 2 - (nodes - 1))


def link_density(sub: Union[Subgraph, Graph]) -> float:
    graph = sub.graph if isinstance(sub, Subgraph) else sub
    return density(graph.n, graph.m)


def edge_set_density(graph: Graph, edges: np.ndarray) -> float:
    """D_s of a set of the graph's EdgeIds, over the nodes they touch."""
    nodes = np.unique(graph.edges[edges]).size
    return density(nodes, len(edges))


def above_cutoff(
    values: np.ndarray, cutoff: Union[float, np.ndarray], mixing_tol: float
) -> np.ndarray:
    """Mask of values ≥ cutoff; values within mixing_tol·cutoff below it tie in."""
    return values >= cutoff - mixing_tol * cutoff


def ulc(
    sub: Union[Subgraph, Graph],
    seed: int,
    steps: int,
    *,
    transition: Optional[LinkTransition] = None,
) -> EdgeDistribution:
    """Unfold: α^l of a link walk started on link `seed`.

    Args:
        sub: connected (sub)network to walk on.
        seed: source EdgeId, local to `sub`.
        steps: walk length l ≥ 1.
        transition: prebuilt operator of `sub`, reused across seeds.

    Raises:
        GraphError: if `sub` is disconnected.
    """
    graph = sub.graph if isinstance(sub, Subgraph) else sub
    if steps < 1:
        raise ValueError(f"walk length must be at least 1, got {steps}")
    if len(connected_components(graph)) > 1:
        raise GraphError("link walk needs a connected network; split it first")
    if transition is None:
        transition = build_transition(graph)
    return propagate(transition, unit_distribution(graph.m, seed), steps)


def elc(alpha: EdgeDistribution, mixing_tol: float = 1e-9) -> LinkBipartition:
    """Extract: cut α at the stationary probability ε = 1/m.

    Links at ε (within mixing_tol·ε) join the inside, so a fully mixed walk
    yields an empty outside.
    """
    inside = above_cutoff(alpha.probs, 1.0 / alpha.m, mixing_tol)
    return LinkBipartition(
        seed=alpha.source,
        steps=alpha.step,
        inside=np.flatnonzero(inside),
        outside=np.flatnonzero(~inside),
        alpha=alpha,
    )


def bipartition_once(
    sub: Subgraph, config: DetectorConfig, rng: np.random.Generator
) -> Optional[LinkBipartition]:
    """Best non-degenerate bipartition over `config.seed_trials` source links.

    Candidates are ranked by the density of their sparser side.

    Returns:
        LinkBipartition, or None if every candidate left one side empty.
    """
    if config.seed_trials < 1:
        raise ValueError(f"seed_trials must be at least 1, got {config.seed_trials}")
    graph = sub.graph
    transition = build_transition(graph)
    bound = step_bound(config.policy, MarkovGenerator(transition))
    seeds = rng.choice(graph.m, size=min(config.seed_trials, graph.m), replace=False)

    best, best_score = None, -np.inf
    for seed in seeds.tolist():
        alpha = ulc(sub, seed, bound.steps, transition=transition)
        candidate = elc(alpha, config.mixing_tol)
        if candidate.degenerate:
            continue
        score = min(
            edge_set_density(graph, candidate.inside),
            edge_set_density(graph, candidate.outside),
        )
        if score > best_score:
            best, best_score = candidate, score

    logging.debug(
        f"bipartition m={graph.m} l={bound.steps} seeds={seeds.tolist()} "
        f"-> {'reject' if best is None else (best.inside.size, best.outside.size)}"
    )
    return best


def accept_split(parent: float, left: float, right: float) -> bool:
    """Keep a split unless one side is strictly less dense than its parent."""
    return min(left, right) >= parent


def _grow(
    members: np.ndarray, path: Tuple[int, ...], expand: ExpandType
) -> Tuple[List[TreeNode], List[Tuple[np.ndarray, int]]]:
    """Depth-first expansion of one top-level member set.

    Returns tree nodes in preorder (indices local to this root) and the
    leaves' (members, node index) in the same order.
    """
    nodes: List[TreeNode] = []
    leaves: List[Tuple[np.ndarray, int]] = []
    stack: List[Tuple[np.ndarray, Optional[int], Tuple[int, ...]]] = [
        (members, None, path)
    ]
    while stack:
        members, parent, path = stack.pop()
        index = len(nodes)
        expansion = expand(members, path)
        nodes.append(
            TreeNode(
                index=index,
                parent=parent,
                path=path,
                kind=expansion.kind,
                edges=expansion.edges,
                nodes=expansion.nodes,
                density=expansion.density,
                steps=expansion.steps,
            )
        )
        if expansion.kind is NodeKind.LEAF:
            leaves.append((members, index))
        for position in reversed(range(len(expansion.children))):
            stack.append((expansion.children[position], index, path + (position,)))
    return nodes, leaves


def grow_tree(
    roots: Sequence[np.ndarray], expand: ExpandType, threads: int = 1
) -> Tuple[Tuple[TreeNode, ...], Tuple[np.ndarray, ...]]:
    """Expand every root to a recursion tree; label leaves depth-first.

    Roots are independent, so with threads > 1 they are expanded
    concurrently; the result doesn't depend on `threads`.

    Returns:
        (flat tree, members of each community in label order)
    """
    tasks = [(members, (position,)) for position, members in enumerate(roots)]
    if threads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            grown = list(pool.map(lambda task: _grow(*task, expand), tasks))
    else:
        grown = [_grow(members, path, expand) for members, path in tasks]

    tree: List[TreeNode] = []
    communities: List[np.ndarray] = []
    for nodes, leaves in grown:
        offset = len(tree)
        labels = {index: len(communities) + k for k, (_, index) in enumerate(leaves)}
        communities.extend(members for members, _ in leaves)
        tree.extend(
            node._replace(
                index=node.index + offset,
                parent=None if node.parent is None else node.parent + offset,
                community=labels.get(node.index),
            )
            for node in nodes
        )
    return tuple(tree), tuple(communities)
