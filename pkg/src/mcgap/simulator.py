"""
Ground-truth reversible chains, seeded path sampling and the Monte-Carlo
coverage harness.

Sampling is inverse-CDF over cumulative row sums: given ``u ~ U[0, 1)`` the
next state is the first ``j`` whose cumulative probability is strictly
greater than ``u``. Uniforms come from numpy's PCG64 generator. Trial ``t`` of
a coverage run with master seed ``s`` uses ``SeedSequence([s, t])``.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numba
import numpy as np

from .core import (DisconnectedGraph, InvalidRates, NotStochastic, SamplePath,
                   StochasticMatrix, check_reversible)
from .estimator import BoundsFactory, estimate
from .linalg import build_sym_L, group_inverse, stationary_distribution, symmetric_eigenvalues
from .intervals import Interval, sensitivity, spectral_gap_estimate

logger = logging.getLogger(__name__)

REVERSIBILITY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ChainModel:
    """A chain with its exact stationary distribution and spectral gap."""

    P: StochasticMatrix
    pi: np.ndarray
    gap: float
    reversible: bool

    @property
    def d(self) -> int:
        return self.P.d

    @property
    def pimin(self) -> float:
        return float(self.pi.min())

    @property
    def relaxation_time(self) -> float:
        return 1.0 / self.gap

    @property
    def group_inv(self) -> np.ndarray:
        P = self.P.entries
        return group_inverse(np.eye(self.d) - P, self.pi)

    @property
    def kappa(self) -> float:
        return sensitivity(self.group_inv)


def _model(P: np.ndarray, pi: Optional[np.ndarray] = None, require_reversible: bool = True) -> ChainModel:
    P = np.asarray(P, dtype=np.float64)
    sm = StochasticMatrix(P)
    solved = stationary_distribution(P)
    if pi is None:
        pi = solved
    else:
        pi = np.asarray(pi, dtype=np.float64)
        pi = pi / pi.sum()
        if np.max(np.abs(pi - solved)) > 1e-10:
            raise AssertionError("closed-form stationary distribution disagrees with the linear solve")
    reversible = check_reversible(P, pi, REVERSIBILITY_TOL)
    if require_reversible and not reversible:
        raise NotStochastic("chain is not reversible")
    eigs = symmetric_eigenvalues(build_sym_L(P, pi))
    return ChainModel(sm, pi, spectral_gap_estimate(eigs), reversible)


def from_matrix(P, require_reversible: bool = True) -> ChainModel:
    """Wrap an ergodic (and, by default, reversible) transition matrix."""
    return _model(P, None, require_reversible)


def birth_death_chain(d: int, up: Sequence[float], down: Sequence[float]) -> ChainModel:
    """
    Birth-death chain on ``0..d-1``.

    ``up[i]`` is the probability of ``i -> i+1`` and ``down[i]`` that of
    ``i+1 -> i``; the remaining mass of each row stays put.
    """
    up = np.asarray(up, dtype=np.float64)
    down = np.asarray(down, dtype=np.float64)
    if d < 2 or up.shape != (d - 1,) or down.shape != (d - 1,):
        raise InvalidRates(f"need d >= 2 and d-1 up/down rates, got d={d}, {up.size}, {down.size}")
    if np.any(up <= 0) or np.any(down <= 0):
        raise InvalidRates("rates must be positive")
    P = np.zeros((d, d))
    for i in range(d - 1):
        P[i, i + 1] = up[i]
        P[i + 1, i] = down[i]
    out = P.sum(axis=1)
    if np.any(out > 1.0 + 1e-15):
        raise InvalidRates("up[i] + down[i-1] exceeds 1 for some state")
    P[np.diag_indices(d)] = np.maximum(1.0 - out, 0.0)
    P /= P.sum(axis=1, keepdims=True)
    pi = np.concatenate([[1.0], np.cumprod(up / down)])
    return _model(P, pi / pi.sum())


def random_walk_on_weighted_graph(weights) -> ChainModel:
    """Random walk with ``P[i, j] = w[i, j] / sum_k w[i, k]``; ``pi`` is proportional to ``sum_k w[i, k]``."""
    W = np.asarray(weights, dtype=np.float64)
    if W.ndim != 2 or W.shape[0] != W.shape[1] or W.shape[0] < 2:
        raise InvalidRates(f"weights must be a square matrix, got shape {W.shape}")
    if np.any(W < 0) or not np.all(np.isfinite(W)):
        raise InvalidRates("weights must be finite and nonnegative")
    if not np.array_equal(W, W.T):
        raise InvalidRates("weights must be symmetric")
    deg = W.sum(axis=1)
    if np.any(deg <= 0):
        raise DisconnectedGraph("isolated vertex")
    # breadth-first reachability from vertex 0
    seen = np.zeros(W.shape[0], dtype=bool)
    seen[0] = True
    frontier = [0]
    while frontier:
        nxt = np.flatnonzero((W[frontier] > 0).any(axis=0) & ~seen)
        seen[nxt] = True
        frontier = list(nxt)
    if not seen.all():
        raise DisconnectedGraph("weighted graph is disconnected")
    return _model(W / deg[:, None], deg / deg.sum())


# ---------------------------------------------------------------------------
# path sampling
# ---------------------------------------------------------------------------


@numba.njit(cache=True)
def _walk(cum, last, x0, u):
    n = u.shape[0] + 1
    d = cum.shape[0]
    out = np.empty(n, dtype=np.int64)
    x = x0
    out[0] = x
    for t in range(n - 1):
        row = cum[x]
        v = u[t]
        j = 0
        while j < d and row[j] <= v:
            j += 1
        if j > last[x]:
            j = last[x]
        x = j
        out[t + 1] = x
    return out


def _cumulative(P: np.ndarray):
    cum = np.cumsum(P, axis=1)
    last = np.array([np.flatnonzero(row > 0)[-1] for row in P], dtype=np.int64)
    return cum, last


def sample_path(model: Union[ChainModel, StochasticMatrix, np.ndarray], n: int,
                seed: Union[int, np.random.SeedSequence, None] = None,
                start: Union[int, str] = "stationary") -> SamplePath:
    """
    Draw ``X_1, ..., X_n``.

    ``start`` is an initial state or ``"stationary"``; in the latter case
    ``X_1`` is drawn from ``model.pi`` (or from the solved stationary
    distribution when only a matrix is given). Deterministic given ``seed``.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if isinstance(model, ChainModel):
        P, pi = model.P.entries, model.pi
    else:
        P = np.asarray(model, dtype=np.float64)
        StochasticMatrix(P)
        pi = None
    d = P.shape[0]
    rng = np.random.default_rng(seed)
    if start == "stationary":
        if pi is None:
            pi = stationary_distribution(P)
        x0 = int(np.searchsorted(np.cumsum(pi), rng.random(), side="right"))
        x0 = min(x0, int(np.flatnonzero(pi > 0)[-1]))
    else:
        x0 = int(start)
        if not 0 <= x0 < d:
            raise ValueError(f"start state {x0} out of range")
    cum, last = _cumulative(P)
    u = rng.random(n - 1)
    return SamplePath(_walk(cum, last, x0, u), d)


def trial_seed(master_seed: int, trial: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(master_seed), int(trial)])


# ---------------------------------------------------------------------------
# coverage harness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrialResult:
    trial: int
    n: int
    pi_hat: tuple[float, ...]
    gap_hat: float
    b: float
    rho: float
    w: float
    covered_pi: bool
    covered_gap: bool
    covered_combined_pimin: bool
    covered_combined_gap: bool
    combined_gap_in_empirical: bool
    combined_pimin_in_empirical: bool
    gap_interval: Interval
    combined_gap: Interval
    combined_pimin: Interval
    flags: tuple[str, ...] = ()


def run_trial(model: ChainModel, n: int, delta: float, trial: int, master_seed: int,
              start: Union[int, str] = "stationary",
              bounds_factory: Optional[BoundsFactory] = None) -> TrialResult:
    path = sample_path(model, n, trial_seed(master_seed, trial), start)
    rep = estimate(path, delta, model.d, combined=True, bounds_factory=bounds_factory)
    ivs = rep.intervals
    return TrialResult(
        trial=trial, n=n, pi_hat=tuple(float(p) for p in rep.pi_hat), gap_hat=rep.gap_hat,
        b=rep.b, rho=rep.rho, w=rep.w,
        covered_pi=all(p in I for p, I in zip(model.pi, ivs.pi)),
        covered_gap=model.gap in ivs.gap,
        covered_combined_pimin=model.pimin in ivs.combined_pimin,
        covered_combined_gap=model.gap in ivs.combined_gap,
        combined_gap_in_empirical=ivs.combined_gap.issubset(ivs.gap),
        combined_pimin_in_empirical=ivs.combined_pimin.issubset(ivs.pimin),
        gap_interval=ivs.gap, combined_gap=ivs.combined_gap, combined_pimin=ivs.combined_pimin,
        flags=ivs.flags,
    )


def _binomial_se(p: float, k: int) -> float:
    return math.sqrt(p * (1.0 - p) / k)


def _quantiles(x: Sequence[float]) -> dict:
    a = np.asarray(x, dtype=np.float64)
    qs = (0.05, 0.25, 0.5, 0.75, 0.95)
    # method="inverted_cdf" keeps +inf entries from producing nan
    return {f"q{int(q * 100):02d}": float(np.quantile(a, q, method="inverted_cdf")) for q in qs}


@dataclass(frozen=True)
class CoverageSummary:
    n: int
    delta: float
    master_seed: int
    trials: tuple[TrialResult, ...] = field(repr=False)

    @property
    def num_trials(self) -> int:
        return len(self.trials)

    def _frac(self, attr: str) -> float:
        return sum(getattr(t, attr) for t in self.trials) / self.num_trials

    @property
    def pi_coverage(self) -> float:
        return self._frac("covered_pi")

    @property
    def gap_coverage(self) -> float:
        return self._frac("covered_gap")

    @property
    def combined_pimin_coverage(self) -> float:
        return self._frac("covered_combined_pimin")

    @property
    def combined_gap_coverage(self) -> float:
        return self._frac("covered_combined_gap")

    @property
    def combined_gap_nested(self) -> float:
        return self._frac("combined_gap_in_empirical")

    def median(self, attr: str) -> float:
        a = np.asarray([getattr(t, attr) for t in self.trials], dtype=np.float64)
        return float(np.quantile(a, 0.5, method="inverted_cdf"))

    def to_dict(self) -> dict:
        k = self.num_trials
        cov = {}
        for name in ("pi", "gap", "combined_pimin", "combined_gap"):
            p = getattr(self, f"{name}_coverage")
            cov[name] = {"fraction": p, "stderr": _binomial_se(p, k)}
        flags = sorted({f for t in self.trials for f in t.flags})
        return {
            "n": self.n,
            "delta": self.delta,
            "master_seed": self.master_seed,
            "trials": k,
            "coverage": cov,
            "combined_gap_nested_fraction": self.combined_gap_nested,
            "widths": {
                "b": _quantiles([t.b for t in self.trials]),
                "w": _quantiles([t.w for t in self.trials]),
                "combined_gap": _quantiles([t.combined_gap.width for t in self.trials]),
                "combined_pimin": _quantiles([t.combined_pimin.width for t in self.trials]),
            },
            "flags": flags,
        }


def _run_one(args):
    return run_trial(*args)


def run_coverage(model: ChainModel, n: int, delta: float, trials: int, master_seed: int,
                 jobs: int = 1, start: Union[int, str] = "stationary",
                 bounds_factory: Optional[BoundsFactory] = None) -> CoverageSummary:
    """
    Repeat sample-and-estimate ``trials`` times and record how often the
    intervals contain the true parameters.

    Results are ordered by trial index, so the summary does not depend on
    ``jobs``.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    work = [(model, n, delta, t, master_seed, start, bounds_factory) for t in range(trials)]
    if jobs <= 1 or trials == 1:
        results = [_run_one(a) for a in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, work, chunksize=max(1, trials // (4 * jobs))))
    logger.info("coverage run: %d trials at n=%d done", trials, n)
    return CoverageSummary(n=n, delta=delta, master_seed=master_seed, trials=tuple(results))
