# coding: utf-8
"""Serialization of detection results, metrics, and plot data.

Tabular outputs (α dumps, sweep tables, cumulative distributions) are
flattened into NamedTuple rows and packed into a tablib.Dataset whose headers
are the row fields; callers pick the export format (``dataset.export("csv")``).

Partitions and covers use plain whitespace-separated text keyed by the node
labels of the input edge list:

    link partition:   <label_u> <label_v> <community>
    node cover:       <label> <community>,<community>,...   (label alone: none)
    node partition:   <label> <community>

JSON summaries are plain dicts ready for ``json.dumps``.
"""
from __future__ import annotations


__all__ = [
    "FlatAlpha",
    "FlatCumulative",
    "flatten_alpha",
    "flatten_sweep",
    "flatten_distribution",
    "write_link_partition",
    "read_link_partition",
    "write_cover",
    "read_memberships",
    "cover_from_memberships",
    "write_node_partition",
    "read_assignments",
    "partition_summary",
    "metric_summary",
]


# stdlib imports
from typing import (
    NamedTuple,
    Dict,
    FrozenSet,
    Iterable,
    Mapping,
    Optional,
    Sequence,
    TextIO,
    Union,
)


# 3rd party imports
import numpy as np
import tablib


# local imports
from linkcomm.graph import Graph, NodeLabelMap, MalformedLine
from linkcomm.linkdyn import EdgeDistribution
from linkcomm.partition.types import NodeCover, TreeNode
from .metrics import ProtocolError, MetricReport
from .sweep import SweepRow


LineSource = Iterable[Union[bytes, str]]


class FlatAlpha(NamedTuple):
    """One row of an α^l dump.

    Attributes:
        edge_u: label of the edge's smaller endpoint.
        edge_v: label of the other endpoint.
        probability: α^l(e).
        epsilon: global mixing value 1/m, repeated as the plot threshold.
        community: label of the edge's community, if a partition was given.
    """

    edge_u: str
    edge_v: str
    probability: float
    epsilon: float
    community: Optional[int] = None


class FlatCumulative(NamedTuple):
    value: float
    cumulative_prob: float


def flatten_alpha(
    graph: Graph,
    labels: NodeLabelMap,
    alpha: EdgeDistribution,
    communities: Optional[Sequence[int]] = None,
) -> tablib.Dataset:
    """Rows in EdgeId order."""
    if alpha.m != graph.m:
        raise ValueError(f"distribution over {alpha.m} edges, graph has {graph.m}")
    epsilon = 1.0 / graph.m
    dataset = tablib.Dataset(headers=FlatAlpha._fields)
    for e, (u, v) in enumerate(graph.edges.tolist()):
        row = FlatAlpha(
            edge_u=labels.label_of(u),
            edge_v=labels.label_of(v),
            probability=float(alpha.probs[e]),
            epsilon=epsilon,
            community=None if communities is None else int(communities[e]),
        )
        dataset.append(tuple(row))
    return dataset


def flatten_sweep(rows: Iterable[SweepRow]) -> tablib.Dataset:
    dataset = tablib.Dataset(headers=SweepRow._fields)
    for row in rows:
        dataset.append(tuple(row))
    return dataset


def flatten_distribution(distribution: Iterable) -> tablib.Dataset:
    """Cumulative distribution P(X ≥ x) as (value, cumulative_prob) rows."""
    dataset = tablib.Dataset(headers=FlatCumulative._fields)
    for value, prob in distribution:
        dataset.append(tuple(FlatCumulative(value, prob)))
    return dataset


def _tokens(source: LineSource):
    """Yield (lineno, line, tokens) of non-blank, non-comment lines."""
    for lineno, line in enumerate(source, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        tokens = line.split()
        if tokens and not tokens[0].startswith("#"):
            yield lineno, line.rstrip("\r\n"), tokens


def _community(lineno: int, line: str, token: str) -> int:
    try:
        community = int(token)
    except ValueError:
        raise MalformedLine(lineno, line, f"community id {token!r} isn't an integer")
    if community < 0:
        raise MalformedLine(lineno, line, "community ids are non-negative")
    return community


def write_link_partition(
    graph: Graph, labels: NodeLabelMap, communities: Sequence[int], stream: TextIO
) -> None:
    names = labels.labels
    for (u, v), community in zip(graph.edges.tolist(), communities):
        stream.write(f"{names[u]} {names[v]} {int(community)}\n")


def read_link_partition(
    source: LineSource, graph: Graph, labels: NodeLabelMap
) -> np.ndarray:
    """Community label of each EdgeId.

    Raises:
        MalformedLine: for bad lines or edges that aren't in `graph`.
        ProtocolError: if some edge has no label.
    """
    edge_ids = {(u, v): e for e, (u, v) in enumerate(graph.edges.tolist())}
    communities = np.full(graph.m, -1, dtype=np.int64)
    for lineno, line, tokens in _tokens(source):
        if len(tokens) != 3:
            raise MalformedLine(lineno, line, f"expected 3 tokens, got {len(tokens)}")
        try:
            u, v = sorted((labels.id_of(tokens[0]), labels.id_of(tokens[1])))
            edge = edge_ids[(u, v)]
        except KeyError:
            raise MalformedLine(lineno, line, "edge isn't in the graph")
        communities[edge] = _community(lineno, line, tokens[2])
    missing = np.count_nonzero(communities < 0)
    if missing:
        raise ProtocolError(f"{missing} edge(s) have no community")
    return communities


def write_cover(cover: NodeCover, labels: NodeLabelMap, stream: TextIO) -> None:
    """One line per node; a node with no membership is written as its label alone."""
    for node, memberships in enumerate(cover.memberships):
        ids = ",".join(str(c) for c in sorted(memberships))
        stream.write(f"{labels.label_of(node)} {ids}".rstrip() + "\n")


def read_memberships(source: LineSource) -> Dict[str, FrozenSet[int]]:
    """Node label → community ids, in file order."""
    memberships: Dict[str, FrozenSet[int]] = {}
    for lineno, line, tokens in _tokens(source):
        if len(tokens) > 2:
            raise MalformedLine(lineno, line, f"expected 1-2 tokens, got {len(tokens)}")
        if tokens[0] in memberships:
            raise MalformedLine(lineno, line, "node listed twice")
        ids = tokens[1].split(",") if len(tokens) == 2 else ()
        memberships[tokens[0]] = frozenset(_community(lineno, line, i) for i in ids)
    return memberships


def cover_from_memberships(
    memberships: Mapping[str, Iterable[int]], labels: NodeLabelMap
) -> NodeCover:
    """NodeCover over `labels`; nodes absent from `memberships` have none."""
    unknown = set(memberships) - set(labels.index)
    if unknown:
        raise ProtocolError(f"{len(unknown)} node(s) not in the node set, e.g. "
                            f"{sorted(unknown)[0]!r}")
    return NodeCover.from_sets(memberships.get(label, ()) for label in labels.labels)


def write_node_partition(
    communities: Sequence[int], labels: NodeLabelMap, stream: TextIO
) -> None:
    for node, community in enumerate(communities):
        stream.write(f"{labels.label_of(node)} {int(community)}\n")


def read_assignments(source: LineSource) -> Dict[str, int]:
    """Node label → community id, in file order."""
    assignments: Dict[str, int] = {}
    for lineno, line, tokens in _tokens(source):
        if len(tokens) != 2:
            raise MalformedLine(lineno, line, f"expected 2 tokens, got {len(tokens)}")
        if tokens[0] in assignments:
            raise MalformedLine(lineno, line, "node listed twice")
        assignments[tokens[0]] = _community(lineno, line, tokens[1])
    return assignments


def _tree_node(node: TreeNode) -> dict:
    return {
        "index": node.index,
        "parent": node.parent,
        "path": list(node.path),
        "kind": node.kind.value,
        "m": node.edges,
        "n": node.nodes,
        "density": node.density,
        "community": node.community,
        "steps": node.steps,
    }


def partition_summary(partition, config: Mapping) -> dict:
    """JSON-ready summary of a LinkPartition or NodePartition.

    Args:
        config: echo of the settings the partition was detected with.
    """
    return {
        "T": partition.count,
        "communities": [
            {
                "id": community.label,
                "m": community.edges,
                "n": community.nodes,
                "density": community.density,
            }
            for community in partition.communities
        ],
        "tree": [_tree_node(node) for node in partition.tree],
        "config": dict(config),
    }


def metric_summary(report: MetricReport) -> dict:
    summary = report._asdict()
    summary["sizes"] = list(report.sizes)
    return summary
