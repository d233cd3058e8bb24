"""Validation of Hermitian and density matrices, and their spectra.

Everything downstream works from the descending eigenvalue vector produced
here, so the ordering and clipping conventions are fixed in this module:

* eigenvalues are returned largest first;
* for density matrices, eigenvalues in ``[-tol_psd, 0)`` are clipped to 0.

Degenerate eigenspaces are not canonicalised; callers only rely on
eigenvalues or on quantities that are basis independent.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    EigensolverFailure,
    MatrixParseError,
    NotHermitian,
    NotPSD,
    NotSquare,
    TraceNotOne,
)

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "DensityMatrix",
    "Spectrum",
    "as_hermitian",
    "validate_density",
    "spectral_decompose",
    "hermitian_singular_values",
    "parse_matrix_text",
    "read_matrix",
    "format_matrix",
    "random_unitary",
    "random_density_matrix",
]


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerances used when validating matrices."""

    herm: float = 1e-10
    trace: float = 1e-10
    psd: float = 1e-9
    recon: float = 1e-8
    orth: float = 1e-8

    def replace(self, **changes) -> "Tolerances":
        return dataclasses.replace(self, **changes)


DEFAULT_TOLERANCES = Tolerances()


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


def _square(M) -> np.ndarray:
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise NotSquare(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NotSquare("matrix has non-finite entries")
    return A


def as_hermitian(M, tol: float = DEFAULT_TOLERANCES.herm) -> np.ndarray:
    """Return ``M`` as a complex array after checking it is Hermitian.

    The result is the exact Hermitian part ``(M + M^*)/2``, so round-off
    asymmetry below ``tol`` never leaks into an eigensolver.
    """
    A = _square(M)
    err = np.max(np.abs(A - A.conj().T))
    if err > tol:
        raise NotHermitian(f"max |M - M^*| = {err:.3e} exceeds {tol:.1e}")
    return (A + A.conj().T) / 2


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated density matrix (Hermitian, PSD, unit trace).

    Build it through :func:`validate_density`; the stored array is read-only.
    """

    matrix: np.ndarray
    tolerances: Tolerances = DEFAULT_TOLERANCES

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Descending eigenvalues with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


def validate_density(M, tols: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """Check that ``M`` is a density matrix and wrap it.

    Raises
    ------
    NotSquare, NotHermitian, NotPSD, TraceNotOne
        The checks run in that order and the first failure is raised.
    """
    A = as_hermitian(M, tols.herm)
    try:
        lam_min = np.linalg.eigvalsh(A)[0]
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    if lam_min < -tols.psd:
        raise NotPSD(f"smallest eigenvalue {lam_min:.3e} is below -{tols.psd:.1e}")
    tr = np.trace(A).real
    if abs(tr - 1.0) > tols.trace:
        raise TraceNotOne(f"trace {tr!r} differs from 1 by more than {tols.trace:.1e}")
    return DensityMatrix(_frozen(A), tols)


def spectral_decompose(X, tols: Tolerances | None = None) -> Spectrum:
    """Eigendecomposition with eigenvalues sorted largest first.

    ``X`` may be a :class:`DensityMatrix` (eigenvalues within ``tol_psd`` of
    zero from below are clipped to 0) or any Hermitian array (no clipping).
    The reconstruction and orthonormality invariants are checked before
    returning.
    """
    if isinstance(X, DensityMatrix):
        A = np.asarray(X.matrix)
        tols = tols or X.tolerances
        clip = True
    else:
        tols = tols or DEFAULT_TOLERANCES
        A = as_hermitian(X, tols.herm)
        clip = False
    try:
        w, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    w = w[::-1].copy()
    V = V[:, ::-1].copy()
    if clip:
        w[(w < 0) & (w >= -tols.psd)] = 0.0

    n = A.shape[0]
    orth = np.max(np.abs(V.conj().T @ V - np.eye(n)))
    recon = np.max(np.abs((V * w) @ V.conj().T - A))
    if not (orth <= tols.orth and recon <= tols.recon):
        raise EigensolverFailure(
            f"eigendecomposition check failed (orthonormality {orth:.2e}, reconstruction {recon:.2e})"
        )
    return Spectrum(_frozen(w), _frozen(V))


def hermitian_singular_values(X, tol: float = DEFAULT_TOLERANCES.herm) -> np.ndarray:
    """Singular values of a Hermitian matrix, i.e. sorted ``|eigenvalues|``."""
    A = as_hermitian(np.asarray(X.matrix if isinstance(X, DensityMatrix) else X), tol)
    try:
        w = np.linalg.eigvalsh(A)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    return np.sort(np.abs(w))[::-1]


# -- text format ---------------------------------------------------------


def parse_matrix_text(text: str) -> np.ndarray:
    """Parse the plain-text matrix format.

    The first non-blank line holds ``n``; each of the next ``n`` lines holds
    ``n`` whitespace-separated entries such as ``0.5`` or ``0.25-0.1j``.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MatrixParseError("empty input")
    try:
        n = int(lines[0])
    except ValueError:
        raise MatrixParseError(f"first line must be an integer dimension, got {lines[0]!r}") from None
    if n < 1:
        raise MatrixParseError(f"dimension must be positive, got {n}")
    if len(lines) != n + 1:
        raise MatrixParseError(f"expected {n} matrix rows, got {len(lines) - 1}")
    M = np.empty((n, n), dtype=complex)
    for i, row in enumerate(lines[1:]):
        fields = row.split()
        if len(fields) != n:
            raise MatrixParseError(f"row {i + 1} has {len(fields)} entries, expected {n}")
        for j, field in enumerate(fields):
            try:
                M[i, j] = complex(field)
            except ValueError:
                raise MatrixParseError(f"cannot parse entry {field!r} in row {i + 1}") from None
    return M


def read_matrix(path) -> np.ndarray:
    return parse_matrix_text(Path(path).read_text())


def _format_entry(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:.17g}"
    return f"{z.real:.17g}{z.imag:+.17g}j"


def format_matrix(M) -> str:
    A = np.asarray(M, dtype=complex)
    rows = [" ".join(_format_entry(z) for z in row) for row in A]
    return "\n".join([str(A.shape[0]), *rows]) + "\n"


# -- random test matrices --------------------------------------------------


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(G)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_density_matrix(n: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random density matrix ``G G^* / tr(G G^*)`` with ``G`` of shape ``n x rank``."""
    rank = n if rank is None else rank
    G = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    rho = G @ G.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real
