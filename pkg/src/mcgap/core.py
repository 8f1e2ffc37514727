"""
Foundational value types: sample paths, stochastic matrices and probability
vectors, plus the exception hierarchy shared across the package.

States are 0-based everywhere inside the package. Arrays held by the value
types are copied on construction and marked read-only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

STOCHASTIC_TOL = 1e-12


class MCGapError(Exception):
    """Base class for all errors raised by mcgap."""


class InputError(MCGapError, ValueError):
    """Malformed user input (bad path, bad flag value, bad matrix)."""


class EmptyInput(InputError):
    pass


class PathTooShort(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class InvalidDelta(InputError):
    pass


class InvalidRates(InputError):
    pass


class DisconnectedGraph(InputError):
    pass


class NotStochastic(InputError):
    pass


class NumericalError(MCGapError, ArithmeticError):
    """A numerical routine could not produce a trustworthy result."""


class SingularSystem(NumericalError):
    pass


class ZeroStationaryEntry(NumericalError):
    pass


class NotSymmetric(NumericalError):
    pass


class TooFewEigenvalues(NumericalError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SamplePath:
    """A single trajectory ``X_1, ..., X_n`` over states ``0..num_states-1``."""

    states: np.ndarray
    num_states: int

    def __post_init__(self):
        object.__setattr__(self, "states", _frozen(np.asarray(self.states, dtype=np.int64)))

    @property
    def n(self) -> int:
        return int(self.states.shape[0])

    @property
    def d(self) -> int:
        return self.num_states

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, SamplePath):
            return NotImplemented
        return self.num_states == other.num_states and np.array_equal(self.states, other.states)

    def __repr__(self):
        return f"SamplePath(n={self.n}, d={self.num_states})"


@dataclass(frozen=True, eq=False)
class StochasticMatrix:
    """Row-stochastic ``d x d`` matrix, validated on construction."""

    entries: np.ndarray

    def __post_init__(self):
        P = np.asarray(self.entries, dtype=np.float64)
        if P.ndim != 2 or P.shape[0] != P.shape[1] or P.shape[0] < 1:
            raise NotStochastic(f"expected a square matrix, got shape {P.shape}")
        if not np.all(np.isfinite(P)):
            raise NotStochastic("matrix has non-finite entries")
        if np.any(P < 0):
            raise NotStochastic("matrix has negative entries")
        err = np.max(np.abs(P.sum(axis=1) - 1.0))
        if err > STOCHASTIC_TOL:
            raise NotStochastic(f"row sums deviate from 1 by {err:.3g}")
        object.__setattr__(self, "entries", _frozen(P))

    @property
    def d(self) -> int:
        return int(self.entries.shape[0])

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


@dataclass(frozen=True, eq=False)
class ProbabilityVector:
    """Nonnegative vector summing to one."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1 or v.size < 1:
            raise InputError(f"expected a nonempty 1-d vector, got shape {v.shape}")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise InputError("probability vector has negative or non-finite entries")
        if abs(v.sum() - 1.0) > STOCHASTIC_TOL:
            raise InputError(f"probability vector sums to {v.sum()!r}")
        object.__setattr__(self, "values", _frozen(v))

    @property
    def d(self) -> int:
        return int(self.values.shape[0])

    @property
    def min(self) -> float:
        return float(self.values.min())

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


def validate_path(raw: Iterable[int] | SamplePath, d_hint: Optional[int] = None) -> SamplePath:
    """
    Check a raw state sequence and wrap it as a :class:`SamplePath`.

    Parameters
    ----------
    raw : sequence of int or SamplePath
        Visited states, 0-based.
    d_hint : int, optional
        Size of the state space. When omitted it is inferred as
        ``max(raw) + 1``, which silently drops never-visited top states.

    Raises
    ------
    EmptyInput, PathTooShort, IndexOutOfRange
    """
    if isinstance(raw, SamplePath):
        if d_hint is None:
            d_hint = raw.num_states
        raw = raw.states
    states = np.asarray(list(raw) if not isinstance(raw, np.ndarray) else raw)
    if states.size == 0:
        raise EmptyInput("sample path is empty")
    if states.ndim != 1:
        raise InputError("sample path must be one-dimensional")
    if not np.issubdtype(states.dtype, np.integer):
        if not np.all(np.equal(np.mod(states, 1), 0)):
            raise InputError("sample path contains non-integer states")
    states = states.astype(np.int64)
    if states.size < 2:
        raise PathTooShort(f"need at least 2 states (one transition), got {states.size}")
    lo, hi = int(states.min()), int(states.max())
    if lo < 0:
        raise IndexOutOfRange(f"negative state index {lo}")
    if d_hint is None:
        d = hi + 1
    else:
        d = int(d_hint)
        if d < 1:
            raise InputError(f"number of states must be positive, got {d}")
        if hi >= d:
            raise IndexOutOfRange(f"state {hi} out of range for {d} states")
    if d < 2:
        # A one-state chain has no spectral gap to speak of.
        raise InputError("need at least 2 states")
    return SamplePath(states, d)


def check_reversible(P, pi, tol: float = 1e-12) -> bool:
    """True iff ``|pi_i P_ij - pi_j P_ji| <= tol`` for all pairs (detailed balance)."""
    P = np.asarray(P, dtype=np.float64)
    pi = np.asarray(pi, dtype=np.float64)
    flux = pi[:, None] * P
    return bool(np.max(np.abs(flux - flux.T)) <= tol)
