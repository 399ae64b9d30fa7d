# coding: utf-8
"""Simple undirected graphs with canonical edge indexing.

A Graph is immutable once built.  Edges are stored once each as canonical
node pairs (u, v) with u < v, sorted lexicographically; an edge's position in
that order is its EdgeId.  Adjacency is kept in compressed sparse row form:
for node i, ``neighbors[indptr[i]:indptr[i + 1]]`` are its neighbors in
ascending order, and the same slice of ``incident`` holds the EdgeIds that
join them to i.

Node ids are dense integers 0..n-1.  External labels (arbitrary strings in an
edge-list file) map onto them through a NodeLabelMap, in order of first
appearance in the input.

Edge-list format: UTF-8 text, one edge per line as ``<label_u> <label_v>``
separated by whitespace.  Blank lines and lines starting with ``#`` are
ignored.
"""
from __future__ import annotations


__all__ = [
    "GraphError",
    "MalformedLine",
    "SelfLoop",
    "EmptyGraph",
    "DuplicateEdgeWarning",
    "Graph",
    "NodeLabelMap",
    "Subgraph",
    "load_edge_list",
    "write_edge_list",
    "induced_by_edges",
    "induced_by_nodes",
    "connected_components",
    "node_components",
    "isolated_nodes",
]


# stdlib imports
import logging
import warnings
from typing import (
    NamedTuple,
    Tuple,
    List,
    Mapping,
    Iterable,
    Optional,
    TextIO,
    Union,
)


# 3rd party imports
import numpy as np
from scipy import sparse
from scipy.sparse import csgraph


class GraphError(ValueError):
    """ Base class for Exceptions defined in this module """


class MalformedLine(GraphError):
    """Exception raised when an edge-list line can't be parsed.

    Attributes:
        lineno: 1-based line number in the input.
        line: offending line, without its line terminator.
        msg: what's wrong with it.
    """

    def __init__(self, lineno: int, line: str, msg: str) -> None:
        self.lineno = lineno
        self.line = line
        self.msg = msg
        super(MalformedLine, self).__init__(f"line {lineno} {line!r}: {msg}")


class SelfLoop(GraphError):
    """Exception raised for an edge joining a node to itself.

    The link transition probability is undefined for self-loops.
    """

    def __init__(self, node: Union[int, str], lineno: Optional[int] = None) -> None:
        self.node = node
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super(SelfLoop, self).__init__(f"{where}self-loop on node {node!r}")


class EmptyGraph(GraphError):
    """Exception raised when an input or selection holds no edges."""


class DuplicateEdgeWarning(UserWarning):
    """Warning issued when duplicate edge lines are collapsed to one edge.

    Attributes:
        count: number of input lines dropped as duplicates.
    """

    def __init__(self, count: int) -> None:
        self.count = count
        super(DuplicateEdgeWarning, self).__init__(
            f"collapsed {count} duplicate edge(s)"
        )


def _readonly(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


class Graph(NamedTuple):
    """Simple undirected graph.

    Attributes:
        n: node count (isolated nodes included).
        edges: (m, 2) array of canonical pairs, u < v, sorted; row index is EdgeId.
        indptr: (n + 1,) CSR row pointers into `neighbors` / `incident`.
        neighbors: (2m,) neighbor node ids, ascending within each node's slice.
        incident: (2m,) EdgeId joining each node to the matching neighbor.
    """

    n: int
    edges: np.ndarray
    indptr: np.ndarray
    neighbors: np.ndarray
    incident: np.ndarray

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable) -> Graph:
        """Build a Graph from node-id pairs.

        Pairs are canonicalized to u < v and sorted; duplicates are collapsed.

        Raises:
            SelfLoop: if any pair joins a node to itself.
            ValueError: if a node id is outside 0..n-1.
        """
        edges, _ = canonical_edges(n, pairs)
        m = len(edges)
        src = np.concatenate((edges[:, 0], edges[:, 1]))
        dst = np.concatenate((edges[:, 1], edges[:, 0]))
        eid = np.concatenate((np.arange(m), np.arange(m)))
        order = np.lexsort((dst, src))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(
            n=int(n),
            edges=_readonly(edges),
            indptr=_readonly(indptr),
            neighbors=_readonly(dst[order]),
            incident=_readonly(eid[order]),
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors_of(self, node: int) -> np.ndarray:
        return self.neighbors[self.indptr[node]:self.indptr[node + 1]]

    def incident_to(self, node: int) -> np.ndarray:
        return self.incident[self.indptr[node]:self.indptr[node + 1]]

    def adjacency_matrix(self) -> sparse.csr_matrix:
        """Symmetric 0/1 node adjacency matrix A = (a_st)."""
        data = np.ones(len(self.neighbors))
        return sparse.csr_matrix(
            (data, self.neighbors, self.indptr), shape=(self.n, self.n)
        )

    def incidence_matrix(self) -> sparse.csr_matrix:
        """Unsigned node-edge incidence matrix B (n x m), B[i, e] = 1 iff i ∈ e."""
        data = np.ones(len(self.incident))
        return sparse.csr_matrix(
            (data, self.incident, self.indptr), shape=(self.n, self.m)
        )


def canonical_edges(n: int, pairs: Iterable) -> Tuple[np.ndarray, int]:
    """Canonicalize node-id pairs; return (sorted unique edges, duplicate count)."""
    pairs = np.asarray(
        pairs if isinstance(pairs, np.ndarray) else list(pairs), dtype=np.int64
    ).reshape(-1, 2)
    if len(pairs) and (pairs.min() < 0 or pairs.max() >= n):
        raise ValueError(f"node ids must lie in 0..{n - 1}")
    loops = pairs[:, 0] == pairs[:, 1]
    if loops.any():
        raise SelfLoop(int(pairs[loops][0, 0]))
    keys = pairs.min(axis=1) * n + pairs.max(axis=1)
    unique = np.unique(keys)
    edges = np.column_stack((unique // n, unique % n)).astype(np.int64)
    return edges, len(keys) - len(unique)


class NodeLabelMap(NamedTuple):
    """Bidirectional map between external node labels and dense node ids.

    Attributes:
        labels: label of each node id.
        index: node id of each label.
    """

    labels: Tuple[str, ...]
    index: Mapping[str, int]

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> NodeLabelMap:
        labels = tuple(labels)
        index = {label: i for i, label in enumerate(labels)}
        if len(index) != len(labels):
            raise ValueError("node labels must be unique")
        return cls(labels=labels, index=index)

    @classmethod
    def identity(cls, n: int) -> NodeLabelMap:
        """Labels "0".."n-1", used for generated graphs."""
        return cls.from_labels(str(i) for i in range(n))

    @property
    def size(self) -> int:
        return len(self.labels)

    def id_of(self, label: str) -> int:
        return self.index[label]

    def label_of(self, node: int) -> str:
        return self.labels[node]


class Subgraph(NamedTuple):
    """Graph built from a selection of a parent graph.

    Attributes:
        graph: the selection, relabeled to dense local ids.
        nodes: parent node id of each local node (ascending).
        edges: parent EdgeId of each local edge (ascending).
    """

    graph: Graph
    nodes: np.ndarray
    edges: np.ndarray


def load_edge_list(source: Iterable[Union[bytes, str]]) -> Tuple[Graph, NodeLabelMap]:
    """Parse an edge list into a simple Graph.

    Args:
        source: binary or text stream (or any iterable of lines).

    Returns:
        (Graph, NodeLabelMap); node ids follow order of first appearance.

    Raises:
        MalformedLine: if a line doesn't hold exactly two tokens.
        SelfLoop: if a line joins a label to itself.
        EmptyGraph: if the input holds no edges.
    """
    index: dict = {}
    pairs = []
    for lineno, line in enumerate(source, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        if len(tokens) != 2:
            raise MalformedLine(
                lineno, line.rstrip("\r\n"), f"expected 2 tokens, got {len(tokens)}"
            )
        u, v = tokens
        if u == v:
            raise SelfLoop(u, lineno)
        pairs.append((index.setdefault(u, len(index)), index.setdefault(v, len(index))))

    if not pairs:
        raise EmptyGraph("edge list holds no edges")

    labels = NodeLabelMap.from_labels(index)
    edges, duplicates = canonical_edges(labels.size, pairs)
    graph = Graph.from_pairs(labels.size, edges)
    if duplicates:
        warnings.warn(DuplicateEdgeWarning(duplicates))
    logging.info(f"Loaded graph n={graph.n} m={graph.m} ({duplicates} duplicates)")
    return graph, labels


def write_edge_list(graph: Graph, labels: NodeLabelMap, stream: TextIO) -> None:
    """Write canonical edges in EdgeId order as ``<label_u> <label_v>`` lines."""
    names = labels.labels
    for u, v in graph.edges.tolist():
        stream.write(f"{names[u]} {names[v]}\n")


def _as_ids(values: Iterable[int]) -> np.ndarray:
    """Sorted unique int64 ids from any iterable."""
    if not isinstance(values, np.ndarray):
        values = list(values)
    return np.unique(np.asarray(values, dtype=np.int64))


def induced_by_edges(graph: Graph, edges: Iterable[int]) -> Subgraph:
    """Isolate a set of edges (with their endpoints) from the rest of the graph.

    Local edge order matches ascending parent EdgeId, because the local
    relabeling of nodes preserves their order.

    Raises:
        EmptyGraph: if `edges` is empty.
        ValueError: if an EdgeId is out of range.
    """
    edges = _as_ids(edges)
    if edges.size == 0:
        raise EmptyGraph("can't induce a subgraph from an empty edge set")
    if edges[0] < 0 or edges[-1] >= graph.m:
        raise ValueError(f"EdgeIds must lie in 0..{graph.m - 1}")
    ends = graph.edges[edges]
    nodes = np.unique(ends)
    local = np.searchsorted(nodes, ends)
    return Subgraph(
        graph=Graph.from_pairs(len(nodes), local),
        nodes=_readonly(nodes),
        edges=_readonly(edges),
    )


def induced_by_nodes(graph: Graph, nodes: Iterable[int]) -> Subgraph:
    """Node-induced subgraph: every edge with both endpoints in `nodes`.

    Members without internal edges are kept as isolated local nodes.
    """
    nodes = _as_ids(nodes)
    member = np.zeros(graph.n, dtype=bool)
    member[nodes] = True
    keep = np.flatnonzero(member[graph.edges[:, 0]] & member[graph.edges[:, 1]])
    local = np.searchsorted(nodes, graph.edges[keep])
    return Subgraph(
        graph=Graph.from_pairs(len(nodes), local),
        nodes=_readonly(nodes),
        edges=_readonly(keep),
    )


def _group(keys: np.ndarray) -> List[np.ndarray]:
    """Indices of equal keys, each group ascending, groups ordered by first index."""
    if keys.size == 0:
        return []
    order = np.argsort(keys, kind="stable")
    bounds = np.flatnonzero(np.diff(keys[order])) + 1
    groups = np.split(order, bounds)
    groups.sort(key=lambda ids: ids[0])
    return groups


def _component_labels(graph: Graph) -> np.ndarray:
    _, labels = csgraph.connected_components(graph.adjacency_matrix(), directed=False)
    return labels


def connected_components(graph: Graph) -> List[np.ndarray]:
    """Partition the EdgeIds by connected component.

    Components are ordered by their smallest EdgeId.  Isolated nodes hold no
    edges and are reported by isolated_nodes().
    """
    if graph.m == 0:
        return []
    labels = _component_labels(graph)
    return _group(labels[graph.edges[:, 0]])


def node_components(graph: Graph) -> List[np.ndarray]:
    """Partition the node ids by connected component (isolated nodes as singletons).

    Components are ordered by their smallest node id.
    """
    return _group(_component_labels(graph))


def isolated_nodes(graph: Graph) -> np.ndarray:
    return np.flatnonzero(graph.degrees == 0)
