"""Brute-force numerical oracles.

``oracle_min_distance`` minimises ``||X - Z||`` directly over rank-``<= k``
states ``Z`` and never touches the closed-form minimiser, so it can be used
to check it. ``Z`` is parametrised as ``B B^* / tr(B B^*)`` with ``B`` an
``n x k`` complex matrix; this map is smooth and onto the rank-``<= k``
states, so the search is unconstrained.

The trace, operator and Ky Fan norms are all sums of the ``r`` largest
entries of ``(lambda, -lambda)``. They are not differentiable at their
minimisers, so BFGS is run on an entropy-smoothed version with the smoothing
width shrunk in stages. The returned value is always the exact norm at the
final point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq, minimize
from scipy.special import expit, xlogy

from .errors import BadRange, BadRank, NonConvergence
from .norms import NormSpec, norm_of_values
from .spectra import DensityMatrix, validate_density

__all__ = ["OracleConfig", "MinResult", "MaxResult", "oracle_min_distance", "oracle_max_distance"]


@dataclass(frozen=True)
class OracleConfig:
    restarts: int = 32
    max_iters: int = 2000
    seed: int = 0
    step_tolerance: float = 1e-10
    value_tolerance: float = 1e-8

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1:
            raise BadRange("restarts and max_iters must be positive")
        if not (self.step_tolerance > 0 and self.value_tolerance > 0):
            raise BadRange("tolerances must be positive")


class MinResult(NamedTuple):
    value: float
    Z: np.ndarray


class MaxResult(NamedTuple):
    value: float
    eigs: np.ndarray


_POLISH_ROUNDS = 20
_SAMPLES_PER_DIM = 200
_CONCENTRATIONS = (0.3, 1.0, 4.0)


def _top_sum_size(spec: NormSpec, n: int) -> int | None:
    """``r`` such that the norm is the sum of the ``r`` largest ``|lambda|``."""
    if spec.kind == "kyfan":
        return spec.r
    if spec.p == 1:
        return n
    if math.isinf(spec.p):
        return 1
    return None


def _smoothed_top_sum(lam, r, mu):
    """Entropy-smoothed sum of the ``r`` largest entries of ``(lam, -lam)``.

    Overestimates the exact value by at most ``2 n mu log 2``.
    """
    w = np.concatenate([lam, -lam])
    spread = np.max(np.abs(w)) + 60 * mu
    tau = brentq(lambda t: expit((w - t) / mu).sum() - r, -spread, spread, xtol=1e-16, rtol=1e-15)
    u = expit((w - tau) / mu)
    entropy = -(xlogy(u, u) + xlogy(1 - u, 1 - u)).sum()
    n = lam.size
    return float(u @ w + mu * entropy), u[:n] - u[n:]


def _schatten_value_grad(lam, p):
    a = np.abs(lam)
    top = a.max()
    if top == 0.0:
        return 0.0, np.zeros_like(lam)
    val = top * np.sum((a / top) ** p) ** (1 / p)
    return float(val), np.sign(lam) * (a / val) ** (p - 1)


def _mu_schedule(n, value_tolerance):
    mu_final = value_tolerance / (2 * n * math.log(2))
    mus = [1e-2]
    while mus[-1] > mu_final:
        mus.append(max(mus[-1] / 100, mu_final))
    return mus


def oracle_min_distance(X, k: int, spec: NormSpec, cfg: OracleConfig = OracleConfig()) -> MinResult:
    """Numerically minimise ``||X - Z||`` over density matrices ``Z`` of rank ``<= k``.

    Best of ``cfg.restarts`` seeded local searches; deterministic for a fixed
    seed. Raises :class:`NonConvergence` (carrying the best value) if no
    restart terminates before ``max_iters``.
    """
    if not isinstance(X, DensityMatrix):
        X = validate_density(X)
    A = np.asarray(X.matrix)
    n = A.shape[0]
    if not 1 <= k <= n:
        raise BadRank(f"rank bound k={k} outside 1..{n}")
    spec.check_dimension(n)
    r = _top_sum_size(spec, n)
    nk = n * k

    def unpack(theta):
        B = (theta[:nk] + 1j * theta[nk:]).reshape(n, k)
        s = np.vdot(B, B).real
        return B, s, B @ B.conj().T / s

    def objective(mu):
        def f(theta):
            B, s, Z = unpack(theta)
            lam, V = np.linalg.eigh(A - Z)
            if r is None:
                val, dlam = _schatten_value_grad(lam, spec.p)
            else:
                val, dlam = _smoothed_top_sum(lam, r, mu)
            G = (V * dlam) @ V.conj().T
            # chain rule through Z = B B^*/s: df = Re tr(H^* dB)
            H = -(2 / s) * (G @ B - np.trace(G @ Z).real * B)
            return val, np.concatenate([H.real.ravel(), H.imag.ravel()])

        return f

    def exact(theta):
        Z = unpack(theta)[2]
        return norm_of_values(np.abs(np.linalg.eigvalsh(A - Z)), spec), Z

    mus = [None] if r is None else _mu_schedule(n, cfg.value_tolerance)
    rng = np.random.default_rng(cfg.seed)
    best_val, best_Z, converged = math.inf, None, False
    for _ in range(cfg.restarts):
        theta = rng.standard_normal(2 * nk)
        status = 1
        for mu in mus:
            res = minimize(
                objective(mu),
                theta,
                jac=True,
                method="BFGS",
                options={"gtol": cfg.step_tolerance * 1e-2, "xrtol": cfg.step_tolerance, "maxiter": cfg.max_iters},
            )
            theta, status = res.x, res.status
        # status 2 is a line-search stall at round-off level, which counts as done
        converged |= status in (0, 2)
        val, Z = exact(theta)
        if val < best_val:
            best_val, best_Z = val, Z
    if not converged:
        raise NonConvergence(f"no restart converged within {cfg.max_iters} iterations", best_val)
    return MinResult(float(best_val), best_Z)


def oracle_max_distance(n: int, k: int, spec: NormSpec, cfg: OracleConfig = OracleConfig()) -> MaxResult:
    """Numerically maximise the distance to rank-``<= k`` states over all states.

    By unitary invariance only spectra matter. The distance of each trial
    spectrum comes from :func:`lowrankdm.approx.distance_to_low_rank`, and the
    spectrum is parametrised as ``w**2 / sum(w**2)``. Starting points are the
    ``cfg.restarts`` best of a batch of random spectra, plus the best random
    spectrum on each face of the simplex; each start is refined with
    Nelder-Mead.
    """
    from .approx import distance_to_low_rank

    if not 1 <= k < n:
        raise BadRank(f"need 1 <= k < n, got n={n}, k={k}")
    spec.check_dimension(n)

    def eigs_of(w):
        q = w * w
        return np.sort(q / q.sum())[::-1]

    def neg(w):
        if not np.any(w):
            return 0.0
        return -distance_to_low_rank(eigs_of(w), k, spec)

    def best_samples(pts, count):
        vals = np.array([distance_to_low_rank(p, k, spec) for p in pts])
        return list(pts[np.argsort(-vals, kind="stable")[:count]])

    rng = np.random.default_rng(cfg.seed)
    # mixed concentrations reach both the centre and the edges of the simplex
    alpha = rng.choice(_CONCENTRATIONS, size=_SAMPLES_PER_DIM * n)
    pts = rng.gamma(alpha[:, None], size=(alpha.size, n))
    starts = best_samples(pts / pts.sum(axis=1, keepdims=True), cfg.restarts)
    # maximisers often sit on a face, which interior samples rarely approach
    for size in range(k + 1, n):
        pts = np.zeros((_SAMPLES_PER_DIM, n))
        pts[:, :size] = rng.dirichlet(np.ones(size), size=_SAMPLES_PER_DIM)
        starts += best_samples(pts, 1)

    options = {
        "xatol": cfg.step_tolerance,
        "fatol": cfg.value_tolerance,
        "maxiter": cfg.max_iters * n,
        "adaptive": True,
    }
    best_val, best_w, converged = -math.inf, None, False
    for p0 in starts:
        w, val = np.sqrt(p0), -math.inf
        # Nelder-Mead stalls at kinks; a fresh simplex gets past most of them
        for _ in range(_POLISH_ROUNDS):
            res = minimize(neg, w, method="Nelder-Mead", options=options)
            converged |= res.status == 0
            if -res.fun <= val + cfg.value_tolerance:
                break
            w, val = res.x, -float(res.fun)
        if val > best_val:
            best_val, best_w = val, w
    if not converged:
        raise NonConvergence(f"no restart converged within {cfg.max_iters * n} iterations", best_val)
    return MaxResult(best_val, eigs_of(best_w))
