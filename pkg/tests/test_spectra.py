import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowrankdm.errors import MatrixParseError, NotHermitian, NotPSD, NotSquare, TraceNotOne
from lowrankdm.spectra import (
    Tolerances,
    format_matrix,
    hermitian_singular_values,
    parse_matrix_text,
    random_density_matrix,
    spectral_decompose,
    validate_density,
)


def test_maximally_mixed_accepted():
    X = validate_density(np.eye(3) / 3)
    assert X.n == 3
    np.testing.assert_allclose(spectral_decompose(X).eigenvalues, [1 / 3] * 3, atol=1e-15)


def test_diagonal_state_accepted():
    validate_density(np.diag([0.5, 0.3, 0.2]))


def test_negative_eigenvalue_rejected():
    # trace is exactly 1 here; only the PSD check can fail
    with pytest.raises(NotPSD):
        validate_density(np.diag([0.5, 0.6, -0.1]))


def test_trace_rejected():
    with pytest.raises(TraceNotOne):
        validate_density(np.diag([0.5, 0.3, 0.1]))


def test_non_hermitian_rejected():
    M = np.array([[0.5, 0.1], [0.2, 0.5]])
    with pytest.raises(NotHermitian):
        validate_density(M)


@pytest.mark.parametrize("shape", [(2, 3), (4,), (0, 0)])
def test_non_square_rejected(shape):
    with pytest.raises(NotSquare):
        validate_density(np.zeros(shape))


def test_tiny_negative_eigenvalue_is_clipped():
    X = validate_density(np.diag([0.6, 0.4 + 5e-10, -5e-10]))
    w = spectral_decompose(X).eigenvalues
    assert w[-1] == 0.0


def test_tolerances_can_be_loosened():
    with pytest.raises(TraceNotOne):
        validate_density(np.diag([0.5, 0.5 + 1e-6]))
    validate_density(np.diag([0.5, 0.5 + 1e-6]), Tolerances(trace=1e-5))


def test_diagonal_spectrum_sorted():
    S = spectral_decompose(validate_density(np.diag([0.2, 0.5, 0.3])))
    np.testing.assert_allclose(S.eigenvalues, [0.5, 0.3, 0.2], atol=1e-15)


@pytest.mark.parametrize("seed", range(10))
def test_random_spectrum_invariants(seed):
    rng = np.random.default_rng(seed)
    A = random_density_matrix(4, rng)
    S = spectral_decompose(validate_density(A))
    assert np.all(np.diff(S.eigenvalues) <= 0)
    assert np.max(np.abs(S.reconstruct() - A)) < 1e-8
    V = S.eigenvectors
    assert np.max(np.abs(V.conj().T @ V - np.eye(4))) < 1e-8
    # decompose(reconstruct(.)) leaves eigenvalues unchanged
    S2 = spectral_decompose(validate_density(S.reconstruct()))
    np.testing.assert_allclose(S2.eigenvalues, S.eigenvalues, atol=1e-9)


def test_stored_matrix_is_read_only():
    X = validate_density(np.eye(2) / 2)
    with pytest.raises(ValueError):
        X.matrix[0, 0] = 1.0


@pytest.mark.parametrize(
    "diag, expected",
    [
        ([-2 / 3, 1 / 3, 1 / 3], [2 / 3, 1 / 3, 1 / 3]),
        ([0.0, 0.0, 0.0], [0.0, 0.0, 0.0]),
        ([-0.1, -0.1, 0.2], [0.2, 0.1, 0.1]),
    ],
)
def test_hermitian_singular_values(diag, expected):
    np.testing.assert_allclose(hermitian_singular_values(np.diag(diag)), expected, atol=1e-15)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2**32 - 1))
def test_singular_values_match_svd(n, seed):
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    H = G + G.conj().T
    np.testing.assert_allclose(hermitian_singular_values(H), np.linalg.svd(H, compute_uv=False), atol=1e-9)


def test_text_round_trip(rng):
    A = random_density_matrix(3, rng)
    B = parse_matrix_text(format_matrix(A))
    np.testing.assert_allclose(A, B, rtol=0, atol=1e-15)


def test_text_format_entries():
    M = parse_matrix_text("2\n0.5 0.25-0.1j\n0.25+0.1j 0.5\n")
    assert M[0, 1] == 0.25 - 0.1j
    validate_density(M)


@pytest.mark.parametrize("text", ["", "x\n1", "2\n1 0\n", "2\n1 0\n0 a\n", "2\n1 0 0\n0 1\n"])
def test_text_format_errors(text):
    with pytest.raises(MatrixParseError):
        parse_matrix_text(text)
