# coding: utf-8
"""Step-number bounds from the spectrum of the weighted line graph.

The Markov generator M = I - Q of the link walk (Q is the LinkTransition
matrix) is symmetric positive semi-definite with eigenvalues
0 = λ₁ ≤ λ₂ ≤ ... ≤ λ_m ≤ 2.  The chain reaches its first local mixing state
around T₂ = 1/λ₂ steps, which serves as a lower bound for the walk length l.

λ₂ is found by Lanczos iteration (ARPACK through scipy's eigsh) on the
shifted operator (2I - M)/2 = (I + Q)/2, whose spectrum lies in [0, 1], after
deflating the exactly known uniform eigenvector.  Its largest remaining
eigenvalue μ gives λ₂ = 2(1 - μ).
"""
from __future__ import annotations


__all__ = [
    "SpectralError",
    "NoConvergence",
    "Disconnected",
    "StepFallbackWarning",
    "StepMode",
    "MarkovGenerator",
    "StepPolicy",
    "Lambda2",
    "StepBound",
    "estimate_lambda2",
    "step_bound",
]


# stdlib imports
import enum
import logging
import math
import warnings
from typing import NamedTuple, Optional


# 3rd party imports
import numpy as np
import scipy.linalg
from scipy.sparse.linalg import LinearOperator, eigsh, ArpackNoConvergence


# local imports
from linkcomm.linkdyn import LinkTransition


#  Lanczos needs a Krylov space larger than the operator allows below this size.
DENSE_LIMIT = 3

#  Start vector seed; fixed so repeated runs take identical iterations.
START_SEED = 0


class SpectralError(ArithmeticError):
    """ Base class for Exceptions defined in this module """


class NoConvergence(SpectralError):
    """Exception raised when the eigensolver exhausts its iteration budget.

    Attributes:
        iterations: operator applications performed before giving up.
    """

    def __init__(self, iterations: int, msg: str) -> None:
        self.iterations = iterations
        super(NoConvergence, self).__init__(
            f"no convergence after {iterations} operator applications: {msg}"
        )


class Disconnected(SpectralError):
    """Exception raised when λ₂ is numerically zero (disconnected line graph)."""


class StepFallbackWarning(UserWarning):
    """Warning issued when a spectral step bound falls back to the cap."""


@enum.unique
class StepMode(enum.Enum):
    FIXED = "fixed"
    SPECTRAL = "spectral"


class MarkovGenerator(NamedTuple):
    """Matrix-free M = I - Q backed by a LinkTransition."""

    transition: LinkTransition

    @property
    def m(self) -> int:
        return self.transition.m

    def matvec(self, vector: np.ndarray) -> np.ndarray:
        vector = np.ravel(vector)
        return vector - self.transition.matrix @ vector

    def rayleigh(self, vector: np.ndarray) -> float:
        """Rayleigh quotient vᵀMv / vᵀv."""
        return float(vector @ self.matvec(vector) / (vector @ vector))


class StepPolicy(NamedTuple):
    """How to choose the walk length l.

    Attributes:
        mode: FIXED uses `cap`; SPECTRAL uses min(ceil(1/λ₂), cap).
        cap: upper bound on l (at least 1).
        tol: eigensolver relative tolerance.
        max_iter: eigensolver iteration budget (None for the solver default).
        fallback: on eigensolver failure, warn and use `cap` instead of raising.
    """

    mode: StepMode = StepMode.FIXED
    cap: int = 100
    tol: float = 1e-8
    max_iter: Optional[int] = None
    fallback: bool = True


class Lambda2(NamedTuple):
    """Second-smallest eigenvalue of M and the work spent finding it."""

    value: float
    iterations: int

    @property
    def mixing_time(self) -> float:
        """T₂ = 1/λ₂."""
        return 1.0 / self.value


class StepBound(NamedTuple):
    """Chosen walk length.

    Attributes:
        steps: the walk length l.
        lambda2: λ₂ if it was computed, else None.
        fallback_used: True if the eigensolver failed and `cap` was used.
    """

    steps: int
    lambda2: Optional[float] = None
    fallback_used: bool = False


def estimate_lambda2(
    generator: MarkovGenerator, tol: float = 1e-8, max_iter: Optional[int] = None
) -> Lambda2:
    """Second-smallest eigenvalue λ₂ of M = I - Q.

    Raises:
        ValueError: if the operator has fewer than 2 rows.
        NoConvergence: if Lanczos iteration doesn't converge within `max_iter`.
        Disconnected: if λ₂ is numerically zero.
    """
    m = generator.m
    if m < 2:
        raise ValueError("λ₂ needs an operator over at least 2 edges")
    matrix = generator.transition.matrix

    if m <= DENSE_LIMIT:
        values = scipy.linalg.eigvalsh(np.eye(m) - matrix.toarray())
        value, iterations = float(values[1]), 0
    else:
        uniform = np.full(m, 1.0 / math.sqrt(m))
        applications = 0

        def deflated(vector: np.ndarray) -> np.ndarray:
            nonlocal applications
            applications += 1
            vector = np.ravel(vector)
            vector = vector - uniform * (uniform @ vector)
            shifted = 0.5 * (vector + matrix @ vector)
            return shifted - uniform * (uniform @ shifted)

        start = np.random.default_rng(START_SEED).standard_normal(m)
        start -= uniform * (uniform @ start)
        operator = LinearOperator((m, m), matvec=deflated, dtype=np.float64)
        try:
            mu = eigsh(
                operator,
                k=1,
                which="LA",
                tol=tol,
                maxiter=max_iter,
                v0=start,
                return_eigenvectors=False,
            )[0]
        except ArpackNoConvergence as exc:
            raise NoConvergence(applications, str(exc)) from exc
        value, iterations = 2.0 * (1.0 - float(mu)), applications

    if value < 10 * tol:
        raise Disconnected(f"λ₂ = {value:.3g} is numerically zero")
    logging.debug(f"λ₂ = {value} (1/λ₂ = {1 / value}) over m={m}")
    return Lambda2(value=value, iterations=iterations)


def step_bound(
    policy: StepPolicy, generator: Optional[MarkovGenerator] = None
) -> StepBound:
    """Walk length l for one (sub)network under `policy`.

    Raises:
        ValueError: if the cap is below 1, or SPECTRAL mode has no generator.
        SpectralError: eigensolver failure when `policy.fallback` is False.
    """
    if policy.cap < 1:
        raise ValueError(f"step cap must be at least 1, got {policy.cap}")
    if policy.mode is StepMode.FIXED:
        return StepBound(steps=policy.cap)
    if generator is None:
        raise ValueError("spectral step mode needs a MarkovGenerator")

    try:
        lambda2 = estimate_lambda2(generator, tol=policy.tol, max_iter=policy.max_iter)
    except SpectralError as exc:
        if not policy.fallback:
            raise
        warnings.warn(StepFallbackWarning(f"{exc}; using step cap {policy.cap}"))
        return StepBound(steps=policy.cap, fallback_used=True)

    steps = min(math.ceil(lambda2.mixing_time), policy.cap)
    return StepBound(steps=steps, lambda2=lambda2.value)
