"""End-to-end estimation from a single sample path."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from . import intervals as iv
from .core import SamplePath, validate_path
from .linalg import build_sym_L, group_inverse, stationary_distribution, symmetric_eigenvalues
from .path_stats import TransitionCounts, count_transitions, smoothed_matrix

# (counts, delta) -> DeviationBounds; see intervals.DeviationBounds
BoundsFactory = Callable[[TransitionCounts, float], iv.DeviationBounds]


@dataclass(frozen=True, eq=False)
class EstimationReport:
    """Every intermediate and final quantity of one estimation run."""

    n: int
    d: int
    delta: float
    counts: TransitionCounts
    P_hat: np.ndarray
    group_inv: np.ndarray
    pi_hat: np.ndarray
    sym_L: np.ndarray
    eigenvalues: np.ndarray
    gap_hat: float
    tail: iv.TailParams
    B: np.ndarray
    kappa: float
    b: float
    rho: float
    w: float
    intervals: iv.IntervalSet

    @property
    def c(self) -> float:
        return self.tail.c

    @property
    def tau(self) -> float:
        return self.tail.tau

    @property
    def relaxation_hat(self) -> float:
        return 1.0 / self.gap_hat if self.gap_hat > 0 else math.inf

    @property
    def pimin_hat(self) -> float:
        return float(self.pi_hat.min())


def estimate(path: SamplePath | Iterable[int], delta: float, num_states: Optional[int] = None,
             combined: bool = True, bounds_factory: Optional[BoundsFactory] = None) -> EstimationReport:
    """
    Point estimates and confidence intervals for the stationary distribution
    and the spectral gap of a reversible ergodic chain.

    Parameters
    ----------
    path : SamplePath or sequence of int
        One trajectory, 0-based states.
    delta : float
        Confidence parameter in (0, 1). The empirical intervals hold
        simultaneously with probability at least ``1 - delta``; the combined
        ones with probability at least ``1 - 2 delta``.
    num_states : int, optional
        Size of the state space. Inferred as ``max(path) + 1`` if omitted.
    combined : bool
        Also compute the combined ``pimin`` and ``gap`` intervals.
    bounds_factory : callable, optional
        Builds the non-empirical :class:`~mcgap.intervals.DeviationBounds`
        used by the combined intervals. Without it the combined intervals
        equal the empirical ones and carry the
        ``nonempirical_bounds_unavailable`` flag.
    """
    iv._check_delta(delta)
    path = validate_path(path, num_states)
    d = path.num_states
    counts = count_transitions(path)
    P_hat = smoothed_matrix(counts, d).entries
    A_hat = np.eye(d) - P_hat
    pi_hat = stationary_distribution(P_hat)
    G = group_inverse(A_hat, pi_hat)
    S = build_sym_L(P_hat, pi_hat)
    eigs = symmetric_eigenvalues(S)
    gap_hat = iv.spectral_gap_estimate(eigs)

    tail = iv.tail_threshold(path.n, d, delta)
    B = iv.entrywise_bounds(P_hat, counts, tail)
    kappa = iv.sensitivity(G)
    b, rho = iv.pi_bounds(kappa, B, pi_hat)
    w = iv.gap_width(rho, pi_hat, B)

    intervals = iv.empirical_intervals(pi_hat, b, gap_hat, w)
    if combined:
        bounds = bounds_factory(counts, delta) if bounds_factory is not None else None
        comb = iv.combined_intervals(intervals, pi_hat, b, gap_hat, w, bounds)
        intervals = iv.with_combined(intervals, comb)

    return EstimationReport(
        n=path.n, d=d, delta=float(delta), counts=counts, P_hat=P_hat, group_inv=G,
        pi_hat=pi_hat, sym_L=S, eigenvalues=eigs, gap_hat=gap_hat, tail=tail, B=B,
        kappa=kappa, b=b, rho=rho, w=w, intervals=intervals,
    )
