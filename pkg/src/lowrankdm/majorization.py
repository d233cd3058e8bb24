"""Majorization and the eigenvalue criterion for USI-norm dominance.

For Hermitian ``X`` and ``Y``, ``||X|| <= ||Y||`` holds for every unitary
similarity invariant norm iff ``lambda(X)`` is majorized by
``t*lambda(Y) + (1-t)*lambda(-Y)`` for some ``t`` in ``[0, 1]``.
:func:`usi_dominates` searches for such a ``t``.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, LengthMismatch
from .spectra import as_hermitian

__all__ = ["majorizes", "majorization_margin", "usi_dominates"]

DEFAULT_TOL = 1e-9
T_GRID_SIZE = 1001


def _vec(x) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise LengthMismatch("expected a one-dimensional vector")
    return v


def majorization_margin(x, y) -> float:
    """Largest violation of ``x ≺ y``.

    Returns ``max_r (X_r - Y_r)`` over descending prefix sums together with
    the absolute difference of totals; ``x ≺ y`` holds iff this is ``<= 0``
    (up to tolerance).
    """
    x, y = _vec(x), _vec(y)
    if x.shape != y.shape:
        raise LengthMismatch(f"lengths differ: {x.size} vs {y.size}")
    px = np.cumsum(np.sort(x)[::-1])
    py = np.cumsum(np.sort(y)[::-1])
    return float(max(np.max(px - py), abs(px[-1] - py[-1])))


def majorizes(x, y, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``y`` majorizes ``x`` (written ``x ≺ y``), within ``tol``."""
    return majorization_margin(x, y) <= tol


def usi_dominates(X, Y, tol: float = DEFAULT_TOL) -> tuple[bool, float | None]:
    """Test whether ``||X|| <= ||Y||`` for all USI norms.

    Returns ``(True, t)`` with a witness ``t`` in ``[0, 1]`` or
    ``(False, None)``. When ``trace(Y)`` is non-zero the trace condition fixes
    ``t`` uniquely. Otherwise the feasible ``t`` form an interval and the
    largest feasible ``t`` is returned.
    """
    A = as_hermitian(X)
    B = as_hermitian(Y)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    lx = np.linalg.eigvalsh(A)[::-1]
    ly = np.linalg.eigvalsh(B)[::-1]
    lmy = -ly[::-1]
    tr_x, tr_y = lx.sum(), ly.sum()

    def margin(t):
        return majorization_margin(lx, t * ly + (1 - t) * lmy)

    if abs(tr_y) > tol:
        t = (tr_x + tr_y) / (2 * tr_y)
        if t < -tol or t > 1 + tol:
            return False, None
        t = min(max(t, 0.0), 1.0)
        return (True, float(t)) if margin(t) <= tol else (False, None)

    if abs(tr_x) > tol:
        return False, None

    # Prefix sums of t*ly + (1-t)*lmy are affine in t, so the margin is
    # max_j (c_j + s_j t): convex and piecewise linear.
    px = np.cumsum(lx)
    a, b = np.cumsum(ly), np.cumsum(lmy)
    c = np.concatenate([px - b, [-(px[-1] - b[-1])]])
    slope = np.concatenate([b - a, [a[-1] - b[-1]]])

    def pl_margin(t):
        return float(np.max(c + slope * t))

    grid = np.linspace(0.0, 1.0, T_GRID_SIZE)
    values = np.max(c[:, None] + slope[:, None] * grid[None, :], axis=0)
    i = int(np.argmin(values))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, T_GRID_SIZE - 1)]
    # the minimum over [lo, hi] sits at an endpoint or where two lines cross
    cands = [lo, hi]
    dc = c[:, None] - c[None, :]
    ds = slope[None, :] - slope[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        cross = dc / ds
    cross = cross[np.isfinite(cross) & (cross >= lo) & (cross <= hi)]
    cands.extend(cross.tolist())
    t_best = min(cands, key=lambda t: (pl_margin(t), -t))
    m_best = pl_margin(t_best)
    if m_best > tol or margin(t_best) > tol:
        return False, None

    # largest t keeping every line at or below the best level
    level = max(m_best, 0.0)
    rising = slope > 0
    t_max = 1.0
    if np.any(rising):
        t_max = min(1.0, float(np.min((level - c[rising]) / slope[rising])))
    t_max = max(t_max, t_best)
    return True, float(t_max)
