"""Visit counts, transition counts and the smoothed transition matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import SamplePath, StochasticMatrix


@dataclass(frozen=True, eq=False)
class TransitionCounts:
    """
    Counts over the first ``n - 1`` positions of a path.

    Attributes
    ----------
    n_visits : ndarray of int64, shape (d,)
        ``N_i``, number of times ``t < n`` with ``X_t = i``.
    n_pairs : ndarray of int64, shape (d, d)
        ``N_ij``, number of transitions ``i -> j``.
    path_length : int
        ``n``.
    """

    n_visits: np.ndarray
    n_pairs: np.ndarray
    path_length: int

    def __post_init__(self):
        for name in ("n_visits", "n_pairs"):
            a = np.array(getattr(self, name), dtype=np.int64, copy=True)
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    @property
    def d(self) -> int:
        return int(self.n_visits.shape[0])


def count_transitions(path: SamplePath) -> TransitionCounts:
    x = path.states
    d = path.num_states
    flat = x[:-1] * d + x[1:]
    pairs = np.bincount(flat, minlength=d * d).reshape(d, d)
    return TransitionCounts(pairs.sum(axis=1), pairs, path.n)


def smoothed_matrix(counts: TransitionCounts, d: int | None = None) -> StochasticMatrix:
    """``P_hat[i, j] = (N_ij + 1/d) / (N_i + 1)``; strictly positive and row-stochastic."""
    if d is None:
        d = counts.d
    if d != counts.d:
        raise ValueError(f"counts are for {counts.d} states, not {d}")
    inv_d = 1.0 / d
    P = (counts.n_pairs + inv_d) / (counts.n_visits[:, None] + 1.0)
    return StochasticMatrix(P)
