# coding: utf-8
"""Accuracy measures and cover statistics.

Covers (possibly overlapping) are compared by FVCC, the fraction of nodes
whose whole membership set is predicted correctly under the better of the two
label permutations, and by the Jaccard index of the predicted and true sets
of overlapping nodes.  Non-overlapping partitions are compared by normalized
mutual information (arithmetic normalization, natural logarithm).
"""
from __future__ import annotations


__all__ = [
    "ProtocolError",
    "EmptyOverlapWarning",
    "CoverStatistics",
    "MetricReport",
    "fvcc",
    "jaccard_overlap",
    "nmi",
    "cover_statistics",
    "evaluate_cover",
    "evaluate_partition",
]


# stdlib imports
import itertools
import warnings
from typing import (
    NamedTuple,
    Tuple,
    Sequence,
    AbstractSet,
    Optional,
    Union,
)


# 3rd party imports
import numpy as np
from scipy import sparse
from sklearn.metrics import normalized_mutual_info_score


# local imports
from linkcomm import utils
from linkcomm.partition.types import NodeCover, LinkPartition


class ProtocolError(ValueError):
    """Exception raised when inputs don't fit the comparison being made."""


class EmptyOverlapWarning(UserWarning):
    """Warning issued when Jaccard compares two empty overlap sets."""


DistributionType = Tuple[Tuple[float, float], ...]


class CoverStatistics(NamedTuple):
    """Cumulative distributions P(X ≥ x) of four cover quantities.

    Attributes:
        size: nodes per community.
        overlap: shared nodes per community pair that shares any.
        membership: communities per assigned node.
        degree: communities sharing a node with each community.
    """

    size: DistributionType
    overlap: DistributionType
    membership: DistributionType
    degree: DistributionType


class MetricReport(NamedTuple):
    """Accuracy of one prediction.

    Attributes:
        fvcc: fraction of vertices classified correctly (covers).
        jaccard: Jaccard index of the overlapping node sets (covers).
        nmi: normalized mutual information (partitions).
        sizes: node count of each predicted community.
        jaccard_empty: True if Jaccard compared two empty sets.
    """

    fvcc: Optional[float] = None
    jaccard: Optional[float] = None
    nmi: Optional[float] = None
    sizes: Tuple[int, ...] = ()
    jaccard_empty: bool = False


#  Stand-ins for missing labels when a cover has fewer than two communities.
_PADDING = (object(), object())


def _padded(cover: NodeCover, what: str) -> Tuple:
    labels = cover.communities
    if len(labels) > 2:
        raise ProtocolError(
            f"{what} has {len(labels)} communities; FVCC compares bipartitions"
        )
    return labels + _PADDING[len(labels):]


def fvcc(pred: NodeCover, truth: NodeCover) -> float:
    """Fraction of nodes whose predicted membership set equals the true one.

    Raises:
        ProtocolError: if either cover has more than two communities, or
            the covers span different node counts.
    """
    if pred.n != truth.n:
        raise ProtocolError(f"cover over {pred.n} nodes, truth over {truth.n}")
    if pred.n == 0:
        raise ProtocolError("no nodes to classify")
    source, target = _padded(pred, "prediction"), _padded(truth, "ground truth")

    best = 0
    for image in itertools.permutations(target):
        relabel = dict(zip(source, image))
        correct = sum(
            {relabel[c] for c in predicted} == actual
            for predicted, actual in zip(pred.memberships, truth.memberships)
        )
        best = max(best, correct)
    return best / pred.n


def jaccard_overlap(
    pred_overlap: AbstractSet[int], truth_overlap: AbstractSet[int], *, warn: bool = True
) -> float:
    """J = |S ∩ V| / |S ∪ V|; 1 when both sets are empty."""
    union = len(pred_overlap | truth_overlap)
    if union == 0:
        if warn:
            warnings.warn(EmptyOverlapWarning("both overlap sets are empty; J = 1"))
        return 1.0
    return len(pred_overlap & truth_overlap) / union


def _labels(partition) -> np.ndarray:
    return np.asarray(getattr(partition, "labels", partition))


def nmi(a, b) -> float:
    """Normalized mutual information of two non-overlapping partitions.

    Args:
        a, b: community label per node, as sequences or NodePartitions.

    Raises:
        ProtocolError: if the partitions cover different node counts.
    """
    a, b = _labels(a), _labels(b)
    if a.shape != b.shape or a.ndim != 1:
        raise ProtocolError(f"partitions over {a.shape} and {b.shape} nodes")
    if a.size == 0:
        raise ProtocolError("no nodes to compare")
    if np.unique(a).size == 1 and np.unique(b).size == 1:
        return 1.0
    value = normalized_mutual_info_score(a, b, average_method="arithmetic")
    return float(min(max(value, 0.0), 1.0))


def _membership_matrix(cover: NodeCover) -> sparse.csr_matrix:
    labels = cover.communities
    column = {label: j for j, label in enumerate(labels)}
    rows, cols = [], []
    for node, memberships in enumerate(cover.memberships):
        for label in memberships:
            rows.append(node)
            cols.append(column[label])
    return sparse.csr_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(cover.n, len(labels))
    )


def cover_statistics(
    cover: NodeCover, partition: Optional[LinkPartition] = None
) -> CoverStatistics:
    """Community size, pairwise overlap, membership number, and community degree.

    Args:
        partition: the link partition the cover came from, checked for
            agreement on the community count.
    """
    if partition is not None and len(cover.communities) != partition.count:
        raise ProtocolError(
            f"cover has {len(cover.communities)} communities, "
            f"partition has {partition.count}"
        )
    membership = _membership_matrix(cover)
    shared = (membership.T @ membership).toarray().astype(np.int64)
    sizes = np.diag(shared).copy()
    np.fill_diagonal(shared, 0)
    upper = shared[np.triu_indices_from(shared, k=1)]
    numbers = np.asarray(membership.sum(axis=1)).ravel().astype(np.int64)

    return CoverStatistics(
        size=utils.cumulative_distribution(sizes.tolist()),
        overlap=utils.cumulative_distribution(upper[upper > 0].tolist()),
        membership=utils.cumulative_distribution(numbers[numbers > 0].tolist()),
        degree=utils.cumulative_distribution(
            np.count_nonzero(shared, axis=1).tolist()
        ),
    )


def evaluate_cover(pred: NodeCover, truth: NodeCover) -> MetricReport:
    """FVCC and Jaccard of a two-community prediction."""
    pred_overlap, truth_overlap = pred.overlap(), truth.overlap()
    empty = not (pred_overlap or truth_overlap)
    return MetricReport(
        fvcc=fvcc(pred, truth),
        jaccard=jaccard_overlap(pred_overlap, truth_overlap),
        sizes=tuple(len(pred.members(c)) for c in pred.communities),
        jaccard_empty=empty,
    )


def evaluate_partition(
    pred: Union[Sequence[int], np.ndarray], truth: Union[Sequence[int], np.ndarray]
) -> MetricReport:
    """NMI of a non-overlapping prediction."""
    labels = _labels(pred)
    _, counts = np.unique(labels, return_counts=True)
    return MetricReport(nmi=nmi(pred, truth), sizes=tuple(counts.tolist()))
