"""States farthest from the set of rank-``<= k`` density matrices.

The farthest state can always be taken of the form ``I_m/m ⊕ O_{n-m}`` with
``k < m <= n``, so the search is over ``n - k`` candidates. This module
evaluates that family, searches it exhaustively, and provides the closed
forms and selectors for the Schatten and Ky Fan families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .approx import distance_to_low_rank, residual_spectrum
from .errors import BadRange, InternalInconsistency, NoSignChange
from .norms import NormSpec, norm_power_of_values

__all__ = [
    "GOLDEN_RATIO",
    "FarthestReport",
    "KyFanSelector",
    "Counterexample",
    "candidate_spectrum",
    "candidate_distance",
    "kyfan_candidate_closed_form",
    "farthest_search",
    "schatten_maxmixed_distance",
    "schatten_maxmixed_power",
    "schatten_is_always_maxmixed",
    "schatten_counterexample",
    "schatten_crossing",
    "kyfan_g",
    "kyfan_optimal_m",
    "operator_norm_farthest",
]

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2
TIE_TOL = 1e-12


def _check_nk(n, k):
    if not (int(n) == n and int(k) == k and 1 <= k < n):
        raise BadRange(f"need integers 1 <= k < n, got n={n}, k={k}")
    return int(n), int(k)


def candidate_spectrum(n: int, m: int) -> np.ndarray:
    """Spectrum of ``I_m/m ⊕ O_{n-m}``."""
    if not 1 <= m <= n:
        raise BadRange(f"need 1 <= m <= n, got m={m}, n={n}")
    x = np.zeros(n)
    x[:m] = 1.0 / m
    return x


def candidate_distance(n: int, m: int, k: int, spec: NormSpec) -> float:
    """Distance from ``I_m/m ⊕ O_{n-m}`` to the rank-``<= k`` states."""
    n, k = _check_nk(n, k)
    if not k + 1 <= m <= n:
        raise BadRange(f"need k+1 <= m <= n, got m={m} (k={k}, n={n})")
    return distance_to_low_rank(candidate_spectrum(n, m), k, spec)


def kyfan_candidate_closed_form(m: int, k: int, r: int) -> float:
    """Ky Fan-``r`` distance of the candidate ``I_m/m ⊕ O`` in closed form.

    The residual has ``k`` entries of size ``1/k - 1/m`` and ``m - k``
    entries of size ``1/m``; which group is larger switches at ``m = 2k``.
    """
    if not 1 <= k < m:
        raise BadRange(f"need 1 <= k < m, got k={k}, m={m}")
    mixed = (m - k) * (2 * k + r - m) / (k * m)
    if r < k:
        if 2 * k <= m:
            return r * (1 / k - 1 / m)
        if r + k <= m:
            return r / m
        return mixed
    if m <= r:
        return 2 - 2 * k / m
    if m >= 2 * k:
        return 1 + (r - 2 * k) / m
    # r < m < 2k: the 1/m entries dominate and all of them fit in the top r
    return mixed


@dataclass(frozen=True)
class FarthestReport:
    n: int
    k: int
    spec: NormSpec
    candidate_distances: dict
    argmax_m: int
    max_distance: float
    ties: list = field(default_factory=list)


def farthest_search(n: int, k: int, spec: NormSpec, tie_tol: float = TIE_TOL) -> FarthestReport:
    """Evaluate every candidate ``m in k+1..n`` and pick the farthest.

    Candidates within ``tie_tol`` of the maximum are listed in ``ties``;
    the largest of them is reported as ``argmax_m``.
    """
    n, k = _check_nk(n, k)
    spec.check_dimension(n)
    dists = {m: candidate_distance(n, m, k, spec) for m in range(k + 1, n + 1)}
    best = max(dists.values())
    ties = [m for m, d in dists.items() if d >= best - tie_tol]
    m_star = max(ties)
    return FarthestReport(n, k, spec, dists, m_star, dists[m_star], ties)


# -- Schatten family ---------------------------------------------------------


def schatten_maxmixed_power(n: int, k: int, p: float) -> float:
    """``(n-k)/n^p + k (1/k - 1/n)^p``, the p-th power of the distance of ``I/n``."""
    n, k = _check_nk(n, k)
    if math.isinf(p):
        raise BadRange("the power form needs a finite p")
    return (n - k) / n**p + k * (1 / k - 1 / n) ** p


def schatten_maxmixed_distance(n: int, k: int, p: float) -> float:
    """Schatten-p distance from the maximally mixed state to the rank-``<= k`` states."""
    n, k = _check_nk(n, k)
    if not p >= 1:
        raise BadRange(f"p must lie in [1, inf], got {p}")
    a, b = 1 / n, 1 / k - 1 / n
    if math.isinf(p):
        return max(a, b)
    top = max(a, b)
    return top * ((n - k) * (a / top) ** p + k * (b / top) ** p) ** (1 / p)


def schatten_is_always_maxmixed(p: float) -> bool:
    """Whether ``I/n`` is the farthest state for every ``n, k`` under Schatten-p."""
    if not p >= 1:
        raise BadRange(f"p must lie in [1, inf], got {p}")
    return p == 1 or 2 <= p <= 4


@dataclass(frozen=True)
class Counterexample:
    """A state strictly farther from rank-``k`` states than ``I_n/n``.

    ``X`` is ``diag(I_{n-1}/(n-1), 0)`` in both families searched.
    """

    p: float
    n: int
    k: int
    family: str
    distance_x: float
    distance_maxmixed: float

    @property
    def description(self) -> str:
        return f"diag(I_{self.n - 1}/{self.n - 1}, 0)"

    @property
    def spectrum(self) -> np.ndarray:
        return candidate_spectrum(self.n, self.n - 1)


def _verified(p, n, k, family):
    spec = NormSpec.schatten(p)
    d_x = distance_to_low_rank(candidate_spectrum(n, n - 1), k, spec)
    d_i = distance_to_low_rank(candidate_spectrum(n, n), k, spec)
    if d_x > d_i * (1 + 1e-12):
        return Counterexample(float(p), n, k, family, d_x, d_i)
    return None


def schatten_counterexample(p: float, n_max: int = 10000, m_max: int = 2000) -> Counterexample | None:
    """Search for ``(n, k)`` where ``I_n/n`` is not the farthest state under Schatten-p.

    Two families are scanned. With ``k = 1`` the distances of ``I_n/n`` and
    ``diag(I_{n-1}/(n-1), 0)`` are ``f(n-1)^{1/p}`` and ``f(n-2)^{1/p}`` with
    ``f(x) = (x + x^p)/(x + 1)^p``; this family works for ``1 < p < 2``.
    With ``(n, k) = (3m, 2m)`` the same pair of states works for ``p > 4``.
    Every hit is re-checked by evaluating both distances directly.

    Returns ``None`` when nothing is found within the bounds, which is not a
    proof that no counterexample exists.
    """
    if not p >= 1:
        raise BadRange(f"p must lie in [1, inf], got {p}")

    if not math.isinf(p):
        x = np.arange(0, n_max, dtype=float)
        with np.errstate(over="ignore"):
            f = (x + x**p) / (x + 1) ** p
        # f[n-2] > f[n-1] for n = 3 .. n_max
        hits = np.flatnonzero(f[1:-1] > f[2:]) + 3
        for n in hits:
            found = _verified(p, int(n), 1, "k=1")
            if found:
                return found

    for m in range(2, m_max + 1):
        found = _verified(p, 3 * m, 2 * m, "n=3m,k=2m")
        if found:
            return found
    return None


def schatten_crossing(n: int, k: int, m1: int, m2: int, bracket=(1.0, 20.0), xtol: float = 1e-10) -> float:
    """Schatten exponent ``p`` at which candidates ``m1`` and ``m2`` are equally far.

    The two p-th powers ``P_m(p) = sum |residual|^p`` are compared as
    ``P_m1/P_m2 - 1``, which has the same sign as the difference of the
    distances and stays well scaled for large ``p``.
    """
    n, k = _check_nk(n, k)
    for m in (m1, m2):
        if not k + 1 <= m <= n:
            raise BadRange(f"need k+1 <= m <= n, got m={m}")
    r1 = np.abs(residual_spectrum(candidate_spectrum(n, m1), k))
    r2 = np.abs(residual_spectrum(candidate_spectrum(n, m2), k))

    def h(p):
        return norm_power_of_values(r1, p) / norm_power_of_values(r2, p) - 1.0

    lo, hi = map(float, bracket)
    if not 1 <= lo < hi or math.isinf(hi):
        raise BadRange(f"bracket must satisfy 1 <= lo < hi < inf, got {bracket}")
    h_lo, h_hi = h(lo), h(hi)
    if h_lo == 0:
        return lo
    if h_hi == 0:
        return hi
    if np.sign(h_lo) == np.sign(h_hi):
        raise NoSignChange(f"no sign change of d_{m1} - d_{m2} on [{lo}, {hi}]")
    return float(bisect(h, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps))


# -- Ky Fan family -------------------------------------------------------------


def kyfan_g(r: int, n: int) -> float:
    """``g(r, n) = (sqrt(r(4n + r)) - r) / 2``."""
    return 0.5 * (math.sqrt(r * (4 * n + r)) - r)


@dataclass(frozen=True)
class KyFanSelector:
    """Prediction of the farthest candidate ``m`` under the Ky Fan-``r`` norm.

    ``candidates`` holds a single ``m`` for the explicit cases and up to four
    values in the ``r < k <= golden_threshold`` case; ``predicted_m`` is the
    best of them.
    """

    n: int
    k: int
    r: int
    case: str
    g_value: float
    golden_threshold: float
    candidates: tuple
    predicted_m: int
    predicted_distance: float
    search_m: int | None = None
    search_distance: float | None = None


def kyfan_optimal_m(n: int, k: int, r: int, verify: bool = True, tol: float = 1e-10) -> KyFanSelector:
    """Case table for the farthest candidate under the Ky Fan-``r`` norm.

    ============================  ====================================
    condition                     m
    ============================  ====================================
    ``k <= r/2``                  ``r``
    ``r/2 < k <= r``              ``n``
    ``k > phi*r``, ``k < g(r,n)``  ``n``
    ``k > phi*r``, ``k >= g(r,n)`` ``min(r + k, n)``
    ``r < k <= phi*r``            best of ``n, r+k, floor(s), ceil(s)``
    ============================  ====================================

    with ``phi`` the golden ratio and ``s = sqrt(k(2k + r))``.

    With ``verify`` the prediction is compared against :func:`farthest_search`
    and :class:`InternalInconsistency` is raised when its distance falls short
    of the exhaustive maximum by more than ``tol``.
    """
    n, k = _check_nk(n, k)
    if not (int(r) == r and 1 <= r <= n):
        raise BadRange(f"need 1 <= r <= n, got r={r}")
    r = int(r)
    spec = NormSpec.kyfan(r)
    g = kyfan_g(r, n)
    golden = GOLDEN_RATIO * r

    if k <= r / 2:
        case, cands = "k<=r/2", (r,)
    elif k <= r:
        case, cands = "r/2<k<=r", (n,)
    elif k > golden:
        if k < g:
            case, cands = "k>phi*r,k<g", (n,)
        else:
            case, cands = "k>phi*r,k>=g", (min(r + k, n),)
    else:
        case = "r<k<=phi*r"
        s = math.sqrt(k * (2 * k + r))
        raw = {n, min(k + r, n), math.floor(s), math.ceil(s)}
        cands = tuple(sorted(m for m in raw if k + 1 <= m <= n))

    values = {m: candidate_distance(n, m, k, spec) for m in cands}
    best = max(values.values())
    m_pred = max(m for m, v in values.items() if v >= best - TIE_TOL)

    sel = KyFanSelector(n, k, r, case, g, golden, cands, m_pred, values[m_pred])
    if not verify:
        return sel
    report = farthest_search(n, k, spec)
    sel = KyFanSelector(
        n, k, r, case, g, golden, cands, m_pred, values[m_pred], report.argmax_m, report.max_distance
    )
    if values[m_pred] < report.max_distance - tol:
        raise InternalInconsistency(
            f"Ky Fan selector for n={n}, k={k}, r={r} (case {case}) predicts m={m_pred} "
            f"with distance {values[m_pred]!r}, but m={report.argmax_m} reaches {report.max_distance!r}"
        )
    return sel


def operator_norm_farthest(n: int, k: int) -> tuple[int, float]:
    """Farthest candidate and its distance under the operator norm."""
    n, k = _check_nk(n, k)
    if k * (k + 1) <= n:
        return n, 1 / k - 1 / n
    return k + 1, 1 / (k + 1)
