import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from renyi_approx.errors import InputError, NonFinite, SizeMismatch, ZeroDiagonal
from renyi_approx.kernels import (
    GaussianKernel,
    NormalizedKernel,
    PolynomialKernel,
    build_kernel,
    constant_kernel,
    hadamard_joint,
    parse_kernel_spec,
)


def test_identical_samples_give_half_matrix():
    A = build_kernel(np.array([[0.3, -1.0], [0.3, -1.0]]), GaussianKernel(1.0))
    np.testing.assert_allclose(A.A, np.full((2, 2), 0.5), atol=1e-15)


def test_far_apart_samples_give_scaled_identity():
    X = np.arange(5)[:, None] * 1e3
    A = build_kernel(X, GaussianKernel(1.0))
    np.testing.assert_allclose(A.A, np.eye(5) / 5, atol=1e-300)


def test_three_point_entries():
    A = build_kernel(np.array([0.0, 1.0, 2.0]), GaussianKernel(1.0)).A
    assert A[0, 1] == pytest.approx(math.exp(-0.5) / 3, rel=1e-14)
    assert A[0, 2] == pytest.approx(math.exp(-2.0) / 3, rel=1e-14)
    # frozen 5-digit reference values
    assert A[0, 1] == pytest.approx(0.20218, abs=5e-6)
    assert A[0, 2] == pytest.approx(0.04511, abs=5e-6)


def test_polynomial_kernel_matches_formula():
    X = np.array([[1.0, 0.0], [0.5, 2.0], [-1.0, 1.0]])
    A = build_kernel(X, PolynomialKernel(2, 1.0)).A
    K = (X @ X.T + 1.0) ** 2
    expected = K / (3 * np.sqrt(np.outer(np.diag(K), np.diag(K))))
    np.testing.assert_allclose(A, expected, rtol=1e-14)


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(2, 12), st.integers(1, 4)),
              elements=st.floats(-5, 5, allow_nan=False)),
       st.floats(0.1, 10.0))
def test_normalized_kernel_invariants(X, sigma):
    A = build_kernel(X, GaussianKernel(sigma)).A
    n = X.shape[0]
    assert np.array_equal(A, A.T)
    np.testing.assert_array_equal(np.diag(A), np.full(n, 1.0 / n))
    assert np.trace(A) == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.eigvalsh(A).min() > -1e-12


def test_kernel_is_read_only():
    A = build_kernel(np.array([0.0, 1.0]))
    with pytest.raises(ValueError):
        A.A[0, 0] = 1.0


def test_errors():
    with pytest.raises(NonFinite):
        build_kernel(np.array([0.0, np.nan]))
    with pytest.raises(ZeroDiagonal):
        build_kernel(np.array([[0.0], [1.0]]), PolynomialKernel(2, 0.0))
    with pytest.raises(InputError):
        GaussianKernel(0.0)
    with pytest.raises(InputError):
        PolynomialKernel(0, 1.0)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("gaussian:sigma=1", GaussianKernel(1.0)),
        ("gaussian:sigma=0.25", GaussianKernel(0.25)),
        ("poly:p=2,r=1", PolynomialKernel(2, 1.0)),
        ("poly:p=3,r=0.5", PolynomialKernel(3, 0.5)),
        ("rbf:sigma=2", GaussianKernel(2.0)),
    ],
)
def test_parse_kernel_spec(text, expected):
    assert parse_kernel_spec(text) == expected


@pytest.mark.parametrize("text", ["", "laplace:sigma=1", "gaussian:sigma=x", "poly:p=2,q=1", "gaussian:sigma=-1"])
def test_parse_kernel_spec_rejects(text):
    with pytest.raises(InputError):
        parse_kernel_spec(text)


def test_hadamard_of_scaled_identities():
    I = NormalizedKernel(np.eye(4) / 4)
    np.testing.assert_allclose(hadamard_joint([I, I]).A, np.eye(4) / 4, atol=1e-16)


def test_hadamard_with_constant_kernel_is_identity_op():
    A = build_kernel(np.random.default_rng(0).standard_normal((6, 2)))
    np.testing.assert_allclose(hadamard_joint([A, constant_kernel(6)]).A, A.A, rtol=1e-14)


def test_hadamard_trace_one_on_random_4x4():
    rng = np.random.default_rng(3)
    A = build_kernel(rng.standard_normal((4, 3)))
    B = build_kernel(rng.standard_normal((4, 2)), PolynomialKernel(2, 1.0))
    J = hadamard_joint([A, B]).A
    # direct summation oracle
    P = A.A * B.A
    np.testing.assert_allclose(J, P / np.trace(P), rtol=1e-13)
    assert abs(np.trace(J) - 1.0) <= 1e-12


def test_hadamard_is_permutation_invariant_bitwise():
    rng = np.random.default_rng(5)
    ks = [build_kernel(rng.standard_normal((7, 2)), GaussianKernel(s)) for s in (0.5, 1.0, 2.0)]
    ref = hadamard_joint(ks).A
    for perm in ([1, 0, 2], [2, 1, 0], [0, 2, 1]):
        assert np.array_equal(hadamard_joint([ks[i] for i in perm]).A, ref)


def test_hadamard_errors():
    with pytest.raises(InputError):
        hadamard_joint([constant_kernel(3)])
    with pytest.raises(SizeMismatch):
        hadamard_joint([constant_kernel(3), constant_kernel(4)])
