"""
Error bounds and confidence intervals built from one sample path.

The pipeline is: spectral-gap point estimate, empirical tail threshold
``tau``, entrywise bounds ``B[i, j]`` on ``|P_hat[i, j] - P[i, j]|``,
sensitivity ``kappa`` of the stationary distribution, the uniform bound
``b`` on ``|pi_hat_i - pi_i|`` with its relative counterpart ``rho``, and the
half-width ``w`` of the spectral-gap interval. ``+inf`` is a legal value for
``rho`` and ``w``; it yields trivial intervals rather than an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .core import InvalidDelta, TooFewEigenvalues
from .path_stats import TransitionCounts

C_DEFAULT = 1.1
TAU_ATOL = 1e-10


# ---------------------------------------------------------------------------
# point estimate
# ---------------------------------------------------------------------------


def spectral_gap_estimate(eigs: Sequence[float]) -> float:
    """``1 - max(lambda_2, |lambda_d|)`` for eigenvalues sorted in decreasing order."""
    eigs = np.asarray(eigs, dtype=np.float64)
    if eigs.size < 2:
        raise TooFewEigenvalues(f"need at least 2 eigenvalues, got {eigs.size}")
    return float(1.0 - max(eigs[1], abs(eigs[-1])))


# ---------------------------------------------------------------------------
# tail threshold
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TailParams:
    tau: float
    n: int
    d: int
    delta: float
    c: float = C_DEFAULT


def tail_function(t: float, n: int, d: int, c: float = C_DEFAULT) -> float:
    """``2 d^2 (1 + ceil(log_c(2n/t))_+) exp(-t)``; ``+inf`` for ``t <= 0``."""
    if t <= 0:
        return math.inf
    k = max(math.ceil(math.log(2.0 * n / t) / math.log(c)), 0)
    return 2.0 * d * d * (1 + k) * math.exp(-t)


def _check_delta(delta: float) -> None:
    if not (0.0 < delta < 1.0) or math.isnan(delta):
        raise InvalidDelta(f"delta must lie in (0, 1), got {delta!r}")


def tail_threshold(n: int, d: int, delta: float, c: float = C_DEFAULT) -> TailParams:
    """
    Smallest ``t >= 0`` with ``tail_function(t) <= delta``.

    The tail function is decreasing but jumps at the points where
    ``log_c(2n/t)`` is an integer, so the root is bracketed by doubling and
    then bisected. The upper end of the final bracket is returned, hence the
    defining inequality holds for the returned value.
    """
    _check_delta(delta)
    if n < 2 or d < 2:
        raise ValueError(f"need n >= 2 and d >= 2, got n={n}, d={d}")
    lo, hi = 0.0, 1.0
    while tail_function(hi, n, d, c) > delta:
        lo, hi = hi, 2.0 * hi
    while hi - lo > TAU_ATOL:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if tail_function(mid, n, d, c) <= delta:
            hi = mid
        else:
            lo = mid
    return TailParams(tau=hi, n=int(n), d=int(d), delta=float(delta), c=float(c))


# ---------------------------------------------------------------------------
# entrywise and derived bounds
# ---------------------------------------------------------------------------


def entrywise_bounds(P_hat, counts: TransitionCounts, tail: TailParams) -> np.ndarray:
    """
    Bounds ``B[i, j]`` on ``|P_hat[i, j] - P[i, j]|``, capped at 1.

    Rows of states that were never left (``N_i = 0``) get ``B = 1``.
    """
    P = np.asarray(P_hat, dtype=np.float64)
    d = P.shape[0]
    c, tau = tail.c, tail.tau
    N = counts.n_visits.astype(np.float64)[:, None]
    visited = N > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        a = c * tau / (2.0 * N)
        inner = (
            a
            + np.sqrt(2.0 * c * P * (1.0 - P) * tau / N)
            + ((4.0 / 3.0) * tau + np.abs(P - 1.0 / d)) / N
        )
        B = (np.sqrt(a) + np.sqrt(inner)) ** 2
    B = np.where(visited, B, 1.0)
    return np.minimum(B, 1.0)


def sensitivity(A_group_inv) -> float:
    """``kappa = 1/2 max_j (A#[j, j] - min_i A#[i, j])``."""
    G = np.asarray(A_group_inv, dtype=np.float64)
    return float(0.5 * np.max(np.diag(G) - G.min(axis=0)))


def pi_bounds(kappa: float, B, pi_hat) -> tuple[float, float]:
    """
    Return ``(b, rho)``.

    ``b = kappa * max B`` bounds ``|pi_hat_i - pi_i|``; ``rho`` bounds the
    relative deviations ``|sqrt(pi_i / pi_hat_i) - 1|`` and its reciprocal
    form, and is ``+inf`` once ``b >= min pi_hat``.
    """
    B = np.asarray(B, dtype=np.float64)
    pi_hat = np.asarray(pi_hat, dtype=np.float64)
    b = float(kappa * B.max())
    if b == 0.0:
        return 0.0, 0.0
    rho = 0.0
    for p in pi_hat:
        shrunk = max(p - b, 0.0)
        if p <= 0.0 or shrunk <= 0.0:
            return b, math.inf
        rho = max(rho, b / p, b / shrunk)
    return b, 0.5 * rho


def gap_width(rho: float, pi_hat, B) -> float:
    """Half-width ``w`` of the spectral-gap interval."""
    if math.isinf(rho):
        return math.inf
    pi_hat = np.asarray(pi_hat, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    weighted = np.sum(pi_hat[:, None] / pi_hat[None, :] * B**2)
    return float(2.0 * rho + rho**2 + (1.0 + 2.0 * rho + rho**2) * math.sqrt(weighted))


# ---------------------------------------------------------------------------
# intervals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains(self, x: float) -> bool:
        return x in self

    def issubset(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersect(self, other: "Interval") -> Optional["Interval"]:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def clip(self, lo: float = 0.0, hi: float = 1.0) -> "Interval":
        return Interval(min(max(self.lo, lo), hi), max(min(self.hi, hi), lo))

    @classmethod
    def around(cls, center: float, halfwidth: float) -> "Interval":
        return cls(center - halfwidth, center + halfwidth)


UNIT = Interval(0.0, 1.0)


@dataclass(frozen=True)
class IntervalSet:
    """
    Confidence intervals from one run.

    ``relaxation`` is the image of ``gap`` under ``t -> 1/t`` and carries no
    guarantee beyond the one on ``gap``. ``combined_pimin``/``combined_gap``
    are ``None`` until :func:`combined_intervals` has been applied.
    """

    pi: tuple[Interval, ...]
    gap: Interval
    pimin: Interval
    relaxation: Interval
    combined_pimin: Optional[Interval] = None
    combined_gap: Optional[Interval] = None
    flags: tuple[str, ...] = field(default=())


def empirical_intervals(pi_hat, b: float, gap_hat: float, w: float) -> IntervalSet:
    pi_hat = np.asarray(pi_hat, dtype=np.float64)
    pi = tuple(Interval.around(float(p), b).clip() for p in pi_hat)
    gap = Interval.around(gap_hat, w).clip()
    pimin = Interval.around(float(pi_hat.min()), b).clip()
    relax = Interval(1.0 / gap.hi if gap.hi > 0 else math.inf,
                     1.0 / gap.lo if gap.lo > 0 else math.inf)
    return IntervalSet(pi=pi, gap=gap, pimin=pimin, relaxation=relax)


@dataclass(frozen=True)
class DeviationBounds:
    """
    Non-empirical deviation bounds whose widths depend on the unknown
    ``pimin`` and ``gap``.

    ``gap_halfwidth(pimin_lo, gap_lo)`` must be valid when the true values are
    replaced by lower bounds. ``pimin_halfwidth(x, pimin_lo, gap_lo)`` is the
    half-width of the bound on the smallest stationary probability when its
    true value is ``x``; the lower bounds stand in wherever ``pimin`` and
    ``gap`` enter as reciprocals. It should be nondecreasing in ``x``.
    """

    gap_estimate: float
    pimin_estimate: float
    gap_halfwidth: Callable[[float, float], float]
    pimin_halfwidth: Callable[[float, float, float], float]


@dataclass(frozen=True)
class CombinedIntervals:
    pimin: Interval
    gap: Interval
    flags: tuple[str, ...] = ()


FLAG_UNAVAILABLE = "nonempirical_bounds_unavailable"
FLAG_DEGENERATE = "degenerate_lower_bound"
FLAG_EMPTY = "empty_intersection"


def solve_self_bounded(center: float, halfwidth: Callable[[float], float],
                       grid: int = 4096, tol: float = 1e-12) -> Interval:
    """
    Connected set ``{x in [0, 1] : |center - x| <= halfwidth(x)}`` around
    ``center``, located on a grid and refined by bisection.
    """
    center = min(max(center, 0.0), 1.0)

    def ok(x):
        return abs(center - x) <= halfwidth(x)

    xs = np.linspace(0.0, 1.0, grid + 1)

    def edge(inside, outside):
        while abs(outside - inside) > tol:
            mid = 0.5 * (inside + outside)
            if ok(mid):
                inside = mid
            else:
                outside = mid
        return inside

    below = xs[xs < center][::-1]
    lo = center
    for x in below:
        if not ok(x):
            lo = edge(lo, x)
            break
        lo = x
    above = xs[xs > center]
    hi = center
    for x in above:
        if not ok(x):
            hi = edge(hi, x)
            break
        hi = x
    return Interval(lo, hi)


def combined_intervals(empirical: IntervalSet, pi_hat, b: float, gap_hat: float, w: float,
                       bounds: Optional[DeviationBounds] = None) -> CombinedIntervals:
    """
    Intersect the empirical intervals for ``pimin`` and ``gap`` with
    non-empirical ones whose unknowns are replaced by empirical lower bounds.

    Without ``bounds`` (or when a lower bound is zero) the empirical intervals
    are returned unchanged and the result is flagged.
    """
    pi_hat = np.asarray(pi_hat, dtype=np.float64)
    pimin_lo = float(np.min(np.clip(pi_hat - b, 0.0, None)))
    gap_lo = max(gap_hat - w, 0.0)
    if bounds is None:
        return CombinedIntervals(empirical.pimin, empirical.gap, (FLAG_UNAVAILABLE,))
    if pimin_lo <= 0.0 or gap_lo <= 0.0 or math.isnan(gap_lo):
        return CombinedIntervals(empirical.pimin, empirical.gap, (FLAG_DEGENERATE,))

    flags = []
    v_half = bounds.gap_halfwidth(pimin_lo, gap_lo)
    v = Interval.around(bounds.gap_estimate, v_half).clip().intersect(empirical.gap)
    if v is None:
        flags.append(FLAG_EMPTY)
        v = empirical.gap
    u_raw = solve_self_bounded(bounds.pimin_estimate,
                               lambda x: bounds.pimin_halfwidth(x, pimin_lo, gap_lo))
    u = u_raw.intersect(empirical.pimin)
    if u is None:
        if FLAG_EMPTY not in flags:
            flags.append(FLAG_EMPTY)
        u = empirical.pimin
    return CombinedIntervals(u, v, tuple(flags))


def with_combined(intervals: IntervalSet, combined: CombinedIntervals) -> IntervalSet:
    return replace(intervals, combined_pimin=combined.pimin, combined_gap=combined.gap,
                   flags=tuple(dict.fromkeys(intervals.flags + combined.flags)))
