# coding: utf-8
"""Link-node-link random walk over the edges of a graph.

An agent sitting on edge e_ij picks one endpoint uniformly, then one edge
incident to that endpoint uniformly.  The transition probability from e_pq
to e_ij is therefore

    p(e_ij, e_ij) = 1/(2 k_i) + 1/(2 k_j)
    p(e_pq, e_ij) = 1/(2 k_s)      if the two edges share exactly node s
    p(e_pq, e_ij) = 0              otherwise

which is P = ½ Bᵀ D⁻¹ B for the unsigned incidence matrix B and degree matrix
D.  P is symmetric and doubly stochastic, so it doubles as the weighted
adjacency (and transition matrix Q) of the weighted line graph; the line graph
is never built as a separate object.

An EdgeDistribution α^l is the probability, after l steps from a source edge,
of the agent sitting on each edge.  Since P is symmetric, one step
α ← αᵀP is a single sparse matrix-vector product.
"""
from __future__ import annotations


__all__ = [
    "LinkTransition",
    "EdgeDistribution",
    "build_transition",
    "unit_distribution",
    "stationary_distribution",
    "propagate",
]


# stdlib imports
from typing import NamedTuple, Optional


# 3rd party imports
import numpy as np
from scipy import sparse


# local imports
from linkcomm.graph import Graph


class LinkTransition(NamedTuple):
    """Sparse link transition operator p_{m x m}.

    Attributes:
        matrix: symmetric doubly stochastic CSR matrix; row e holds
                (k_i - 1) + (k_j - 1) + 1 entries for e = (i, j).
    """

    matrix: sparse.csr_matrix

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    def row(self, edge: int) -> dict:
        """Map of neighbor EdgeId -> probability for one row (self entry included)."""
        start, stop = self.matrix.indptr[edge], self.matrix.indptr[edge + 1]
        return dict(
            zip(
                self.matrix.indices[start:stop].tolist(),
                self.matrix.data[start:stop].tolist(),
            )
        )


class EdgeDistribution(NamedTuple):
    """Probability vector α^l over EdgeIds.

    Attributes:
        probs: dense float64 vector of length m.
        step: number of walk steps l taken from α^0.
        source: EdgeId of the source link, or None for distributions not
                started from a single link.
    """

    probs: np.ndarray
    step: int = 0
    source: Optional[int] = None

    @property
    def m(self) -> int:
        return len(self.probs)


def build_transition(graph: Graph) -> LinkTransition:
    """Build the link transition operator of a simple graph."""
    if graph.m == 0:
        raise ValueError("link transition needs at least one edge")
    degrees = graph.degrees.astype(np.float64)
    inverse = np.divide(1.0, degrees, out=np.zeros_like(degrees), where=degrees > 0)
    incidence = graph.incidence_matrix()
    matrix = 0.5 * (incidence.T @ sparse.diags(inverse) @ incidence)
    matrix = sparse.csr_matrix(matrix)
    matrix.sort_indices()
    return LinkTransition(matrix=matrix)


def unit_distribution(m: int, seed: int) -> EdgeDistribution:
    """α^0: all probability on the source link `seed`."""
    if not 0 <= seed < m:
        raise ValueError(f"seed edge {seed} out of range 0..{m - 1}")
    probs = np.zeros(m)
    probs[seed] = 1.0
    return EdgeDistribution(probs=probs, step=0, source=int(seed))


def stationary_distribution(m: int) -> EdgeDistribution:
    """α^∞ = 1/m, the global mixing state of a connected graph."""
    if m < 1:
        raise ValueError("stationary distribution needs at least one edge")
    return EdgeDistribution(probs=np.full(m, 1.0 / m), step=0, source=None)


def propagate(
    transition: LinkTransition, alpha: EdgeDistribution, steps: int
) -> EdgeDistribution:
    """Advance a distribution `steps` walk steps: α^{l+steps}."""
    if alpha.m != transition.m:
        raise ValueError(
            f"distribution over {alpha.m} edges, operator over {transition.m}"
        )
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")
    probs = alpha.probs
    matrix = transition.matrix
    for _ in range(steps):
        probs = matrix @ probs
    return alpha._replace(probs=probs, step=alpha.step + steps)
