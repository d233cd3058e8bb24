"""Closest density matrix of rank at most k.

The minimiser keeps the top-k eigenvectors of ``X`` and shifts the top-k
eigenvalues up by ``gamma = (1/k) * sum_{j>k} x_j`` so the trace stays 1.
It is the same matrix for every unitary similarity invariant norm; only the
reported distance depends on the norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadRank, NotPSD, TraceNotOne
from .norms import NormSpec, norm_of_values
from .spectra import DEFAULT_TOLERANCES, DensityMatrix, spectral_decompose, validate_density

__all__ = [
    "ApproxResult",
    "gamma_shift",
    "residual_spectrum",
    "distance_to_low_rank",
    "closest_rank_k",
]


@dataclass(frozen=True, eq=False)
class ApproxResult:
    k: int
    gamma: float
    Y: DensityMatrix
    distance: float
    residual_spectrum: np.ndarray
    spec: NormSpec


def _spectrum(eigs, tol: float = 1e-9) -> np.ndarray:
    """Descending, clipped copy of a probability spectrum; ``tol`` bounds the trace error."""
    x = np.sort(np.asarray(eigs, dtype=float))[::-1]
    if x.ndim != 1 or x.size == 0:
        raise BadRank("expected a non-empty eigenvalue vector")
    if x[-1] < -DEFAULT_TOLERANCES.psd:
        raise NotPSD(f"negative eigenvalue {x[-1]:.3e}")
    if abs(x.sum() - 1.0) > tol:
        raise TraceNotOne(f"eigenvalues sum to {x.sum()!r}")
    return np.clip(x, 0.0, None)


def _check_rank(k, n) -> int:
    if int(k) != k or not 1 <= k <= n:
        raise BadRank(f"rank bound k={k} outside 1..{n}")
    return int(k)


def gamma_shift(eigs, k: int) -> float:
    """``(1/k) * sum_{j>k} x_j`` for descending eigenvalues ``x``."""
    x = _spectrum(eigs)
    k = _check_rank(k, x.size)
    return float(x[k:].sum() / k)


def residual_spectrum(eigs, k: int, tol: float = 1e-9) -> np.ndarray:
    """Eigenvalues of ``X - Y``: ``k`` copies of ``-gamma`` then the tail of ``x``."""
    x = _spectrum(eigs, tol)
    k = _check_rank(k, x.size)
    g = x[k:].sum() / k
    return np.concatenate([np.full(k, -g), x[k:]])


def distance_to_low_rank(eigs, k: int, spec: NormSpec, tol: float = 1e-9) -> float:
    """Distance from a state with spectrum ``eigs`` to the rank-``<= k`` states.

    Unsorted input is treated as a multiset and sorted first. ``tol`` is the
    allowed deviation of ``sum(eigs)`` from 1.
    """
    res = residual_spectrum(eigs, k, tol)
    spec.check_dimension(res.size)
    return norm_of_values(np.sort(np.abs(res))[::-1], spec)


def closest_rank_k(X, k: int, spec: NormSpec) -> ApproxResult:
    """Closest rank-``<= k`` density matrix to ``X`` and its distance under ``spec``.

    ``X`` may be a :class:`DensityMatrix` or an array, which is validated first.
    """
    if not isinstance(X, DensityMatrix):
        X = validate_density(X)
    n = X.n
    k = _check_rank(k, n)
    spec.check_dimension(n)
    if k == n:
        return ApproxResult(k, 0.0, X, 0.0, np.zeros(n), spec)

    S = spectral_decompose(X)
    x = S.eigenvalues
    g = float(x[k:].sum() / k)
    V = S.eigenvectors[:, :k]
    Y = (V * (x[:k] + g)) @ V.conj().T
    Y = (Y + Y.conj().T) / 2
    res = np.concatenate([np.full(k, -g), x[k:]])
    dist = norm_of_values(np.sort(np.abs(res))[::-1], spec)
    return ApproxResult(k, g, validate_density(Y, X.tolerances), dist, res, spec)
