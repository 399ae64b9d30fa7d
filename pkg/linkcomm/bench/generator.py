# coding: utf-8
"""Two overlapping planted communities from a link community model.

Every node carries a weight θ_iu in each community u it belongs to, and the
number of edges between nodes i and j planted by community u is
Poisson(θ_iu θ_ju).  Weights are calibrated so that every node has the same
expected degree ⟨k⟩, and nodes in both communities get half their expected
degree from each:

    pure member of u:     θ_iu = t_u = sqrt(⟨k⟩ / (x_u + z/2))
    overlapping member:   θ_iu = t_u / 2   for both u

Node ids are laid out as x pure members of community 0, then the z
overlapping nodes, then y pure members of community 1.  The multigraph is
collapsed to a simple graph: self-loops are dropped and parallel edges merged.
"""
from __future__ import annotations


__all__ = [
    "BknCollapseWarning",
    "BknConfig",
    "BknSample",
    "community_weights",
    "bkn_multigraph",
    "generate_bkn",
]


# stdlib imports
import logging
import warnings
from typing import NamedTuple, Optional, Tuple


# 3rd party imports
import numpy as np


# local imports
from linkcomm import utils
from linkcomm.graph import Graph
from linkcomm.partition.types import NodeCover


class BknCollapseWarning(UserWarning):
    """Warning issued when θ products are large enough that collapsing
    parallel edges visibly lowers degrees below ⟨k⟩.
    """


class BknConfig(NamedTuple):
    """Parameters of one planted instance.

    Attributes:
        x: nodes only in community 0.
        y: nodes only in community 1.
        z: nodes in both communities.
        k_expected: expected degree ⟨k⟩ of every node.
        seed: RNG seed of the instance.
    """

    x: int
    y: int
    z: int
    k_expected: float
    seed: int = 0

    @property
    def n(self) -> int:
        return self.x + self.y + self.z

    def validate(self) -> None:
        if min(self.x, self.y, self.z) < 0:
            raise ValueError(f"community sizes must be non-negative: {self}")
        if self.n < 3:
            raise ValueError(f"a planted instance needs n >= 3, got {self.n}")
        if self.x + self.z == 0 or self.y + self.z == 0:
            raise ValueError(f"both communities need members: {self}")
        if not self.k_expected > 0:
            raise ValueError(f"expected degree must be positive, got {self.k_expected}")


class BknSample(NamedTuple):
    """Raw multigraph draw.

    Attributes:
        n: node count.
        pairs: (M, 2) endpoint pairs, self-loops and repeats included.
        community: community (0 or 1) that planted each pair.
    """

    n: int
    pairs: np.ndarray
    community: np.ndarray

    def degrees(self) -> np.ndarray:
        """Multigraph degrees; a self-loop counts twice."""
        return np.bincount(self.pairs.ravel(), minlength=self.n)


def community_weights(config: BknConfig) -> np.ndarray:
    """(n, 2) array of θ_iu; zero where node i is not in community u."""
    config.validate()
    x, y, z = config.x, config.y, config.z
    theta = np.zeros((config.n, 2))
    for u, pure in enumerate((x, y)):
        t = np.sqrt(config.k_expected / (pure + z / 2))
        members = slice(0, x) if u == 0 else slice(x + z, config.n)
        theta[members, u] = t
        theta[x:x + z, u] = t / 2
    return theta


def bkn_multigraph(config: BknConfig, rng: np.random.Generator) -> BknSample:
    """Draw every community's edges at once.

    Community u plants Poisson(S_u² / 2) edges (S_u = Σ_i θ_iu) with both
    endpoints drawn independently ∝ θ_iu, which gives each unordered pair
    i ≠ j Poisson(θ_iu θ_ju) edges.
    """
    theta = community_weights(config)
    pairs, community = [], []
    for u in range(2):
        weights = theta[:, u]
        total = weights.sum()
        count = rng.poisson(total * total / 2)
        ends = rng.choice(config.n, size=(count, 2), p=weights / total)
        pairs.append(ends)
        community.append(np.full(count, u, dtype=np.int64))
    return BknSample(
        n=config.n,
        pairs=np.concatenate(pairs).astype(np.int64),
        community=np.concatenate(community),
    )


def _truth(config: BknConfig) -> NodeCover:
    x, z = config.x, config.z
    memberships = [{0}] * x + [{0, 1}] * z + [{1}] * config.y
    return NodeCover.from_sets(memberships)


def generate_bkn(
    config: BknConfig, rng: Optional[np.random.Generator] = None
) -> Tuple[Graph, NodeCover]:
    """Draw a simple graph and its planted two-community cover.

    Isolated nodes stay in the node set.

    Args:
        rng: random stream; defaults to one derived from `config.seed`.
    """
    if rng is None:
        rng = utils.derive_rng(config.seed)
    theta = community_weights(config)
    if (theta.max(axis=0) ** 2 >= 1).any():
        warnings.warn(
            BknCollapseWarning(
                f"θ² reaches {theta.max() ** 2:.2f}; merging parallel edges "
                "will lower degrees below the expected value"
            )
        )

    sample = bkn_multigraph(config, rng)
    loops = sample.pairs[:, 0] == sample.pairs[:, 1]
    graph = Graph.from_pairs(config.n, sample.pairs[~loops])
    logging.info(
        f"Planted n={config.n} (x={config.x}, y={config.y}, z={config.z}) "
        f"<k>={config.k_expected}: {len(sample.pairs)} draws, "
        f"{np.count_nonzero(loops)} self-loops, m={graph.m}"
    )
    return graph, _truth(config)
