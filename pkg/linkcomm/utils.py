"""
Utility functions used by linkcomm modules
"""
from typing import Iterable, Sequence, Tuple

import numpy as np


def derive_rng(seed: int, path: Sequence[int] = ()) -> np.random.Generator:
    """Independent random stream for one position in a recursion or sweep.

    The stream depends only on (seed, path), never on the order in which
    positions are visited, so sequential and threaded runs draw identically.

    >>> a = derive_rng(7, (0, 1)).integers(1 << 30)
    >>> b = derive_rng(7, (0, 1)).integers(1 << 30)
    >>> bool(a == b)
    True
    """
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(int(p) for p in path))
    return np.random.default_rng(sequence)


def cumulative_distribution(values: Iterable[float]) -> Tuple[Tuple[float, float], ...]:
    """Complementary cumulative distribution P(X ≥ x) at each distinct value x.

    >>> cumulative_distribution([1, 1, 2, 4])
    ((1, 1.0), (2, 0.5), (4, 0.25))
    """
    values = np.asarray(list(values))
    if values.size == 0:
        return ()
    distinct, counts = np.unique(values, return_counts=True)
    at_least = np.cumsum(counts[::-1])[::-1] / values.size
    return tuple(zip(distinct.tolist(), at_least.tolist()))


def derive_seed(seed: int, path: Sequence[int] = ()) -> int:
    """Integer seed for one position, drawn from the same stream as derive_rng().

    >>> derive_seed(3, (1, 2)) == derive_seed(3, (1, 2))
    True
    """
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(int(p) for p in path))
    return int(sequence.generate_state(1)[0])
