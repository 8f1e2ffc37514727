"""
Dense linear algebra for ergodic chains: stationary distribution, group
inverse of ``A = I - P``, the symmetrised similarity transform of ``P`` and
its eigenvalues.

Linear solves go through LAPACK's partially pivoted LU (``numpy.linalg.solve``)
and eigenvalues through LAPACK's symmetric driver (``numpy.linalg.eigvalsh``).
"""

from __future__ import annotations

import numpy as np

from .core import NotSymmetric, SingularSystem, ZeroStationaryEntry

SYMMETRY_TOL = 1e-12


def _square(M) -> np.ndarray:
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    return M


def stationary_distribution(P) -> np.ndarray:
    """
    Stationary distribution of an ergodic stochastic matrix.

    Solves ``(P^T - I) x = 0`` with the last equation replaced by
    ``sum(x) = 1``.

    Raises
    ------
    SingularSystem
        If the system is singular or yields a non-positive solution, which
        means ``P`` does not have a unique positive stationary distribution.
    """
    P = _square(P)
    d = P.shape[0]
    M = P.T - np.eye(d)
    M[-1, :] = 1.0
    rhs = np.zeros(d)
    rhs[-1] = 1.0
    try:
        pi = np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"stationary system is singular: {exc}") from None
    if not np.all(np.isfinite(pi)):
        raise SingularSystem("stationary system produced non-finite values")
    if pi.min() <= 0.0:
        if pi.min() < -1e-12 * max(1.0, np.abs(pi).max()):
            raise SingularSystem("chain has no positive stationary distribution")
        pi = np.clip(pi, 0.0, None)
    return pi / pi.sum()


def fundamental_matrix(A, pi) -> np.ndarray:
    """``Z = (A + 1 pi^T)^{-1}`` for ``A = I - P``."""
    A = _square(A)
    pi = np.asarray(pi, dtype=np.float64)
    W = np.outer(np.ones(A.shape[0]), pi)
    try:
        return np.linalg.solve(A + W, np.eye(A.shape[0]))
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"A + 1 pi^T is singular: {exc}") from None


def group_inverse(A, pi) -> np.ndarray:
    """
    Group inverse ``A#`` of ``A = I - P`` for an ergodic ``P`` with
    stationary distribution ``pi``.

    Uses the fundamental-matrix identity ``A# = (A + 1 pi^T)^{-1} - 1 pi^T``.
    The result satisfies ``A A# A = A``, ``A# A A# = A#`` and ``A A# = A# A``.
    """
    A = _square(A)
    pi = np.asarray(pi, dtype=np.float64)
    if pi.shape != (A.shape[0],):
        raise ValueError("pi has the wrong length")
    Z = fundamental_matrix(A, pi)
    G = Z - np.outer(np.ones(A.shape[0]), pi)
    if not np.all(np.isfinite(G)):
        raise SingularSystem("group inverse has non-finite entries")
    return G


def build_sym_L(P, pi) -> np.ndarray:
    """
    ``Sym(L)`` where ``L = Diag(pi)^{1/2} P Diag(pi)^{-1/2}``.

    The returned matrix is exactly symmetric.
    """
    P = _square(P)
    pi = np.asarray(pi, dtype=np.float64)
    if np.any(pi <= 0):
        raise ZeroStationaryEntry("stationary distribution has a zero entry")
    s = np.sqrt(pi)
    L = s[:, None] * P / s[None, :]
    S = 0.5 * (L + L.T)
    # L + L^T is already symmetric in exact arithmetic; copy the upper
    # triangle so the eigensolver sees a bit-exact symmetric input.
    iu = np.triu_indices_from(S, 1)
    S.T[iu] = S[iu]
    return S


def symmetric_eigenvalues(S) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, sorted in decreasing order."""
    S = _square(S)
    scale = max(1.0, float(np.abs(S).max(initial=0.0)))
    if np.max(np.abs(S - S.T), initial=0.0) > SYMMETRY_TOL * scale:
        raise NotSymmetric("matrix is not symmetric")
    return np.linalg.eigvalsh(S)[::-1].copy()
