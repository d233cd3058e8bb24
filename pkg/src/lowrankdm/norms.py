"""Schatten and Ky Fan norms of Hermitian matrices.

Both families are functions of the singular values only, which for a
Hermitian matrix are the absolute eigenvalues. ``norm_of_values`` works on a
descending vector of singular values; ``norm_of_matrix`` computes that
vector first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec
from .spectra import hermitian_singular_values

__all__ = [
    "NormSpec",
    "TRACE",
    "FROBENIUS",
    "OPERATOR",
    "parse_norm",
    "norm_of_values",
    "norm_power_of_values",
    "norm_of_matrix",
]


@dataclass(frozen=True)
class NormSpec:
    """Selects a Schatten-p norm (``p`` in ``[1, inf]``) or a Ky Fan-r norm.

    Use the :meth:`schatten` and :meth:`kyfan` constructors or
    :func:`parse_norm`; ``str(spec)`` gives back the parseable form.
    """

    kind: str
    p: float | None = None
    r: int | None = None

    def __post_init__(self):
        if self.kind == "schatten":
            if self.p is None or math.isnan(self.p) or self.p < 1:
                raise InvalidSpec(f"Schatten exponent must be in [1, inf], got {self.p}")
            if self.r is not None:
                raise InvalidSpec("Schatten norms take no r")
            object.__setattr__(self, "p", float(self.p))
        elif self.kind == "kyfan":
            if self.r is None or int(self.r) != self.r or self.r < 1:
                raise InvalidSpec(f"Ky Fan index must be a positive integer, got {self.r}")
            if self.p is not None:
                raise InvalidSpec("Ky Fan norms take no p")
            object.__setattr__(self, "r", int(self.r))
        else:
            raise InvalidSpec(f"unknown norm kind {self.kind!r}")

    @classmethod
    def schatten(cls, p: float) -> "NormSpec":
        return cls("schatten", p=p)

    @classmethod
    def kyfan(cls, r: int) -> "NormSpec":
        return cls("kyfan", r=r)

    @property
    def is_schatten(self) -> bool:
        return self.kind == "schatten"

    def check_dimension(self, n: int) -> None:
        if self.kind == "kyfan" and self.r > n:
            raise InvalidSpec(f"Ky Fan index r={self.r} exceeds dimension {n}")

    def __str__(self) -> str:
        if self.kind == "kyfan":
            return f"kyfan:{self.r}"
        if math.isinf(self.p):
            return "schatten:inf"
        return f"schatten:{self.p:g}"


TRACE = NormSpec.schatten(1)
FROBENIUS = NormSpec.schatten(2)
OPERATOR = NormSpec.schatten(math.inf)

_ALIASES = {"trace": TRACE, "frobenius": FROBENIUS, "operator": OPERATOR}


def parse_norm(text: str) -> NormSpec:
    """Parse ``schatten:<p>``, ``kyfan:<r>``, ``trace``, ``frobenius`` or ``operator``."""
    key = text.strip().lower()
    if key in _ALIASES:
        return _ALIASES[key]
    kind, sep, arg = key.partition(":")
    if not sep:
        raise InvalidSpec(f"cannot parse norm {text!r}")
    try:
        if kind == "schatten":
            return NormSpec.schatten(float(arg))
        if kind == "kyfan":
            return NormSpec.kyfan(int(arg))
    except ValueError:
        raise InvalidSpec(f"cannot parse norm parameter in {text!r}") from None
    raise InvalidSpec(f"unknown norm kind in {text!r}")


def _as_values(sv) -> np.ndarray:
    v = np.asarray(sv, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise InvalidSpec("expected a non-empty vector of singular values")
    return v


def norm_power_of_values(sv, p: float) -> float:
    """``sum(sv**p)`` without the ``1/p`` root (finite ``p`` only)."""
    v = _as_values(sv)
    if not p >= 1 or math.isinf(p):
        raise InvalidSpec(f"power sums need a finite p >= 1, got {p}")
    return float(np.sum(np.abs(v) ** p))


def norm_of_values(sv, spec: NormSpec) -> float:
    """Evaluate ``spec`` on a descending vector of singular values."""
    v = np.sort(np.abs(_as_values(sv)))[::-1]
    spec.check_dimension(v.size)
    if spec.kind == "kyfan":
        return float(np.sum(v[: spec.r]))
    p = spec.p
    if math.isinf(p):
        return float(v[0])
    if p == 1:
        return float(np.sum(v))
    # factor out the largest value so that large p neither overflows nor underflows
    top = float(np.max(v))
    if top == 0.0:
        return 0.0
    return top * float(np.sum((v / top) ** p)) ** (1.0 / p)


def norm_of_matrix(X, spec: NormSpec) -> float:
    return norm_of_values(hermitian_singular_values(X), spec)
