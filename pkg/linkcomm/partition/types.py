# coding: utf-8
"""Data structures for bipartitions, link partitions, and node covers.

Recursive detection produces a tree.  Each TreeNode describes one edge set
(or node set, for node communities) that the detector looked at:

    * a "split" node was bipartitioned and the split accepted; its two
      children are the sides, each at least as dense as the node itself.
    * a "components" node is a bipartition side whose edges fall into more
      than one connected component; its children are the components, which
      are detected independently.
    * a "leaf" node became a community; `community` holds its label.

Top-level nodes (parent None) are the connected components of the input.
Community labels are handed out to leaves in depth-first order.
"""
from __future__ import annotations


__all__ = [
    "NodeKind",
    "DetectorConfig",
    "LinkBipartition",
    "TreeNode",
    "Community",
    "LinkPartition",
    "NodeCover",
]


# stdlib imports
import enum
from typing import NamedTuple, Tuple, FrozenSet, Optional, Iterable


# 3rd party imports
import numpy as np


# local imports
from linkcomm.spectral import StepPolicy
from linkcomm.linkdyn import EdgeDistribution


@enum.unique
class NodeKind(enum.Enum):
    SPLIT = "split"
    COMPONENTS = "components"
    LEAF = "leaf"


class DetectorConfig(NamedTuple):
    """Knobs of the recursive detector.

    Attributes:
        policy: walk length policy (fixed cap or spectral bound).
        rng_seed: master seed; every subtree derives its own stream from it.
        seed_trials: number of distinct source links tried per bipartition.
        min_edges_leaf: edge sets smaller than this are never split.
        mixing_tol: α(e) within mixing_tol·ε of ε counts as reaching ε.
        threads: worker threads for independent connected components.
    """

    policy: StepPolicy = StepPolicy()
    rng_seed: int = 0
    seed_trials: int = 1
    min_edges_leaf: int = 2
    mixing_tol: float = 1e-9
    threads: int = 1


class LinkBipartition(NamedTuple):
    """Two link modules extracted from one walk.

    Attributes:
        seed: source EdgeId (local to the subnetwork walked on).
        steps: walk length l.
        inside: EdgeIds with α(e) ≥ ε (the seed's side).
        outside: EdgeIds with α(e) < ε.
        alpha: the distribution that was thresholded.
    """

    seed: int
    steps: int
    inside: np.ndarray
    outside: np.ndarray
    alpha: EdgeDistribution

    @property
    def degenerate(self) -> bool:
        return self.inside.size == 0 or self.outside.size == 0


class TreeNode(NamedTuple):
    """One step of the recursion.

    Attributes:
        index: position in the flat tree tuple.
        parent: index of the parent node, None at top level.
        path: child positions from the top-level component down.
        kind: SPLIT, COMPONENTS, or LEAF.
        edges: number of edges m_s.
        nodes: number of nodes n_s.
        density: partition density D_s.
        community: community label for leaves, else None.
        steps: walk length used when this node was bipartitioned, else None.
    """

    index: int
    parent: Optional[int]
    path: Tuple[int, ...]
    kind: NodeKind
    edges: int
    nodes: int
    density: float
    community: Optional[int] = None
    steps: Optional[int] = None


class Community(NamedTuple):
    """A detected community.

    Attributes:
        label: community id.
        members: EdgeIds (link communities) or node ids (node communities).
        edges: m_s.
        nodes: n_s.
        density: D_s.
    """

    label: int
    members: np.ndarray
    edges: int
    nodes: int
    density: float


class LinkPartition(NamedTuple):
    """Disjoint link communities covering every edge.

    Attributes:
        labels: community label of each EdgeId.
        communities: one Community per label, in label order.
        tree: flat recursion tree, parents before children.
    """

    labels: np.ndarray
    communities: Tuple[Community, ...]
    tree: Tuple[TreeNode, ...]

    @property
    def count(self) -> int:
        """Community count T."""
        return len(self.communities)

    def children(self, index: int) -> Tuple[TreeNode, ...]:
        return tuple(node for node in self.tree if node.parent == index)


class NodeCover(NamedTuple):
    """Possibly overlapping node memberships.

    Attributes:
        memberships: frozenset of community ids for each node id.
    """

    memberships: Tuple[FrozenSet[int], ...]

    @classmethod
    def from_sets(cls, memberships: Iterable[Iterable[int]]) -> NodeCover:
        return cls(memberships=tuple(frozenset(ms) for ms in memberships))

    @property
    def n(self) -> int:
        return len(self.memberships)

    @property
    def communities(self) -> Tuple[int, ...]:
        return tuple(sorted(frozenset().union(*self.memberships)))

    def overlap(self) -> FrozenSet[int]:
        """Nodes belonging to more than one community."""
        return frozenset(i for i, ms in enumerate(self.memberships) if len(ms) > 1)

    def unassigned(self) -> FrozenSet[int]:
        """Nodes with no membership (isolated nodes)."""
        return frozenset(i for i, ms in enumerate(self.memberships) if not ms)

    def members(self, community: int) -> FrozenSet[int]:
        return frozenset(i for i, ms in enumerate(self.memberships) if community in ms)
