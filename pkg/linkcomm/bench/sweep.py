# coding: utf-8
"""Parameter sweeps over planted instances.

Three families vary one parameter of a base BknConfig:

    * ``k``: expected degree ⟨k⟩, community sizes fixed;
    * ``x``: size of the larger pure community, with z fixed and y = n - z - x;
    * ``z``: number of overlapping nodes, with n fixed and x = y (± 1).

Every instance is bipartitioned once and scored by FVCC and Jaccard against
its planted cover.  When z = 0 the planted communities are disjoint, and the
full node community detector is scored by NMI as well.
"""
from __future__ import annotations


__all__ = ["SweepKind", "SweepRow", "instance_config", "run_instance", "sweep"]


# stdlib imports
import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple, Optional, Sequence, Tuple


# 3rd party imports
import numpy as np


# local imports
from linkcomm import utils
from linkcomm.partition import DetectorConfig, bisect
from linkcomm.nodecomm import uelc_nodes
from .generator import BknConfig, generate_bkn
from .metrics import fvcc, jaccard_overlap, nmi


@enum.unique
class SweepKind(enum.Enum):
    DEGREE = "k"
    SIZE = "x"
    OVERLAP = "z"


class SweepRow(NamedTuple):
    """Scores of one instance; field order is the CSV column order."""

    param: float
    instance: int
    fvcc: float
    jaccard: float
    nmi: Optional[float] = None


def instance_config(
    kind: SweepKind, value, base: BknConfig, seed: int
) -> BknConfig:
    """The BknConfig of one sweep point."""
    if kind is SweepKind.DEGREE:
        config = base._replace(k_expected=value)
    elif kind is SweepKind.SIZE:
        config = base._replace(x=int(value), y=base.n - base.z - int(value))
    else:
        rest = base.n - int(value)
        config = base._replace(x=rest - rest // 2, y=rest // 2, z=int(value))
    config = config._replace(seed=seed)
    config.validate()
    return config


def run_instance(
    bkn: BknConfig, detector: DetectorConfig, param=None, instance: int = 0
) -> SweepRow:
    graph, truth = generate_bkn(bkn)
    pred = bisect(graph, detector)
    score = None
    if bkn.z == 0:
        planted = np.array([min(ms) for ms in truth.memberships])
        score = nmi(uelc_nodes(graph, detector), planted)
    return SweepRow(
        param=param,
        instance=instance,
        fvcc=fvcc(pred, truth),
        jaccard=jaccard_overlap(pred.overlap(), truth.overlap(), warn=False),
        nmi=score,
    )


def sweep(
    kind: SweepKind,
    values: Sequence,
    base: BknConfig,
    instances: int,
    detector: Optional[DetectorConfig] = None,
    *,
    master_seed: int = 0,
    threads: int = 1,
) -> Tuple[SweepRow, ...]:
    """Score `instances` planted graphs at each value of one parameter.

    Instance seeds derive from (master_seed, value position, instance), so
    rows don't depend on `threads`.

    Returns:
        rows ordered by value, then instance.
    """
    detector = detector or DetectorConfig()
    if instances < 1:
        raise ValueError(f"need at least one instance per point, got {instances}")
    tasks = [
        (
            instance_config(kind, value, base, utils.derive_seed(master_seed, (i, j))),
            value,
            j,
        )
        for i, value in enumerate(values)
        for j in range(instances)
    ]

    def work(task) -> SweepRow:
        bkn, value, j = task
        return run_instance(bkn, detector, param=value, instance=j)

    logging.info(f"Sweeping {kind.value} over {list(values)}: {len(tasks)} instances")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return tuple(pool.map(work, tasks))
    return tuple(work(task) for task in tasks)
