import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import low_rank_psd, spd_with_spectrum
from oracles import exact_entropy
from renyi_approx.entropy import (
    EstimatorParams,
    Method,
    check_alpha,
    entropy_chebyshev,
    entropy_exact,
    entropy_from_trace,
    entropy_int,
    entropy_taylor,
    estimate_entropy,
    mu_bound,
    select_params,
)
from renyi_approx.errors import AlphaIsOne, DegenerateBounds, DomainError, InputError, NonPositiveTrace
from renyi_approx.kernels import PolynomialKernel, build_kernel
from renyi_approx.polyapprox import ChebyshevPower
from renyi_approx.spectrum import SpectrumBounds


def rank_deficient_poly_kernel(seed=0):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((120, 3))
    return build_kernel(np.vstack([X, X[:10]]), PolynomialKernel(2, 1.0))


# ---------------------------------------------------------------- exact oracle

def test_exact_on_scaled_identity():
    assert entropy_exact(np.eye(3) / 3, 2.0).entropy == pytest.approx(1.0986123, abs=1e-7)
    for alpha in (0.5, 1.5, 3.0):
        assert entropy_exact(np.eye(7) / 7, alpha).entropy == pytest.approx(math.log(7), rel=1e-12)


def test_exact_on_rank_one():
    w = np.random.default_rng(0).standard_normal(5)
    w /= np.linalg.norm(w)
    assert entropy_exact(np.outer(w, w), 2.5).entropy == pytest.approx(0.0, abs=1e-12)


def test_exact_on_diag():
    est = entropy_exact(np.diag([0.5, 0.3, 0.2]), 2.0)
    assert est.entropy == pytest.approx(-math.log(0.38), rel=1e-14)
    assert est.entropy == pytest.approx(0.96758, abs=5e-6)
    assert est.trace_estimate == pytest.approx(0.38, rel=1e-14)
    assert est.method_used is Method.EXACT


def test_alpha_validation():
    with pytest.raises(AlphaIsOne):
        check_alpha(1.0)
    with pytest.raises(AlphaIsOne):
        EstimatorParams(alpha=1.0 + 1e-10)
    check_alpha(1.0 + 1e-8)
    with pytest.raises(DomainError):
        check_alpha(0.0)
    with pytest.raises(DomainError):
        check_alpha(float("nan"))


def test_nonpositive_trace_is_an_error():
    with pytest.raises(NonPositiveTrace):
        entropy_from_trace(-1e-3, 2.0)
    with pytest.raises(NonPositiveTrace):
        entropy_from_trace(0.0, 0.5)


# ----------------------------------------------------------- integer estimator

def test_int_on_scaled_identity_seed_mean():
    n = 2000
    A = np.eye(n) / n
    vals = [entropy_int(A, 2, 8, seed).entropy for seed in range(100)]
    assert abs(np.mean(vals) / math.log(n) - 1) <= 1e-3


def test_int_exact_on_rank_three():
    A = low_rank_psd(80, 3, np.random.default_rng(0))
    ref = exact_entropy(A, 3)
    for seed in range(10):
        assert entropy_int(A, 3, 16, seed).entropy == pytest.approx(ref, rel=1e-10)


def test_int_rejects_fractional_alpha():
    with pytest.raises(DomainError):
        entropy_int(np.eye(3) / 3, 2.5, 8)


def test_int_mixture_mre(mixture_kernel, mixture_eigs):
    ref = math.log(np.sum(mixture_eigs**2)) / (1 - 2)
    rel = [abs(entropy_int(mixture_kernel, 2, 10, seed).entropy / ref - 1) for seed in range(100)]
    assert np.mean(rel) <= 0.01


# ------------------------------------------------------------ Taylor estimator

def test_taylor_rotated_diag(rotated_diag):
    ref = exact_entropy(rotated_diag, 1.5)
    est = entropy_taylor(rotated_diag, 1.5, 64, 40, 0.5 * (1 + 1e-6), seed=0)
    assert est.entropy == pytest.approx(ref, rel=1e-3)
    assert (est.s_used, est.m_used) == (64, 40)


def test_taylor_identity_terminates_at_first_term():
    # f(A) = v^alpha I exactly; what remains is probe noise on a full-rank matrix
    n = 2000
    A = np.eye(n) / n
    vals = [entropy_taylor(A, 0.5, 8, 3, 1 / n, seed).entropy for seed in range(100)]
    assert abs(np.mean(vals) / math.log(n) - 1) <= 1e-3


def test_taylor_validation():
    with pytest.raises(DomainError):
        entropy_taylor(np.eye(3) / 3, 2.0, 8, 5, 0.5)
    with pytest.raises(InputError):
        entropy_taylor(np.eye(3) / 3, 2.5, 8, 3, 0.5)  # m below ceil(alpha) + 1


def test_taylor_mixture_mre(mixture_kernel, mixture_eigs):
    v = float(mixture_eigs[-1]) * 1.001
    ref = math.log(np.sum(mixture_eigs**1.5)) / (1 - 1.5)
    rel = [abs(entropy_taylor(mixture_kernel, 1.5, 50, 40, v, seed).entropy / ref - 1) for seed in range(100)]
    assert np.mean(rel) <= 1e-2


# --------------------------------------------------------- Chebyshev estimator

def test_chebyshev_rotated_diag(rotated_diag):
    ref = exact_entropy(rotated_diag, 1.5)
    est = entropy_chebyshev(rotated_diag, 1.5, 64, 15, 0.2 * (1 - 1e-6), 0.5 * (1 + 1e-6), seed=0)
    assert est.entropy == pytest.approx(ref, rel=1e-3)


def test_chebyshev_rank_deficient_poly_kernel():
    A = rank_deficient_poly_kernel()
    assert np.linalg.eigvalsh(A.A)[0] < 1e-12
    ref = exact_entropy(A, 2.5)
    v = float(np.linalg.eigvalsh(A.A)[-1]) * 1.001
    est = entropy_chebyshev(A, 2.5, 64, 30, 0.0, v, seed=0)
    assert est.entropy == pytest.approx(ref, rel=1e-2)


def test_chebyshev_identity_with_safeguard():
    # s_q >= n: the sketch spans R^n and only the polynomial error is left
    n = 50
    A = np.eye(n) / n
    assert ChebyshevPower(0.5, 10, 1 / n, 1 / n).v > 1 / n
    est = entropy_chebyshev(A, 0.5, 200, 10, 1 / n, 1 / n, seed=0)
    assert est.entropy == pytest.approx(math.log(n), rel=1e-2)


def test_degenerate_spectrum_all_paths_agree():
    # n <= s_q, so the sketch spans everything and only polynomial error remains
    A = np.eye(3) / 3
    ref = math.log(3)
    assert entropy_int(A, 2, 16).entropy == pytest.approx(ref, rel=1e-13)
    assert entropy_taylor(A, 2.5, 16, 4, 1 / 3).entropy == pytest.approx(ref, rel=1e-13)
    assert entropy_chebyshev(A, 2.5, 16, 20, 1 / 3, 1 / 3).entropy == pytest.approx(ref, rel=1e-6)


# -------------------------------------------------------------- select_params

def test_select_params_s_example():
    s, m = select_params(2.0, 0.1, 0.1, None, Method.INT)
    assert math.ceil(10 * math.sqrt(math.log(10)) + math.log(10)) == 18
    assert (s, m) == (20, None)


def test_select_params_chebyshev_kappa_100():
    # 10 * ln(100 / 0.005) = 99.03, so the ceiling is 100
    b = SpectrumBounds(u=0.001, v=0.1, n=1000)
    _, m = select_params(1.5, 0.01, 0.05, b, Method.CHEBYSHEV)
    assert m == math.ceil(10 * math.log(100 / 0.005)) == 100


def test_select_params_chebyshev_rank_deficient():
    b = SpectrumBounds(u=0.0, v=0.5, n=1000, rank_deficient=True)
    _, m = select_params(2.0, 0.01, 0.05, b, Method.CHEBYSHEV)
    assert m == math.ceil(math.sqrt(500) * 100**0.25) == 71


@settings(max_examples=50, deadline=None)
@given(st.floats(0.1, 6.0).filter(lambda a: abs(a - 1) > 0.05), st.floats(0.001, 0.5), st.floats(0.001, 0.5))
def test_select_params_s_is_multiple_of_four(alpha, eps, delta):
    s, _ = select_params(alpha, eps, delta, None, Method.INT)
    assert s % 4 == 0 and s >= 8


def test_select_params_needs_bounds_for_polynomials():
    with pytest.raises(InputError):
        select_params(1.5, 0.1, 0.1, None, Method.TAYLOR)


# ------------------------------------------------------------------ mu bound

def test_mu_bound_u_zero():
    assert mu_bound(0.0, 0.4, 2.5, 100).mu == pytest.approx(0.4**1.5, rel=1e-14)


def test_mu_bound_degenerate():
    assert mu_bound(0.1, 0.1, 2.5, 10).mu == pytest.approx(10**-1.5, rel=1e-14)
    with pytest.raises(DegenerateBounds):
        mu_bound(0.05, 0.05, 2.0, 10)


def test_sandwich_random():
    rng = np.random.default_rng(0)
    for _ in range(200):
        n = int(rng.integers(2, 100))
        alpha = float(rng.choice([0.3, 0.5, 1.5, 2.0, 3.7]))
        lam = rng.exponential(size=n) * (rng.random(n) > 0.1)
        if lam.sum() == 0:
            continue
        lam /= lam.sum()
        T = float(np.sum(lam**alpha))
        lo, hi = mu_bound(lam.min(), lam.max(), alpha, n).interval
        assert lo * (1 - 1e-12) <= T <= hi * (1 + 1e-12)


@pytest.mark.parametrize("alpha", [0.5, 1.5, 2.0, 3.0])
def test_trace_error_maps_to_entropy_error(alpha):
    # trace relative error 1 - min(mu, 1/mu)^eps0 keeps entropy relative error <= eps0
    rng = np.random.default_rng(int(alpha * 10))
    for _ in range(50):
        n = int(rng.integers(5, 60))
        lam = rng.uniform(0.1, 1.0, n)
        lam /= lam.sum()
        T = float(np.sum(lam**alpha))
        S = math.log(T) / (1 - alpha)
        mu = mu_bound(lam.min(), lam.max(), alpha, n).mu
        for eps0 in (1e-3, 1e-2, 0.1, 0.5):
            eps = 1 - min(mu, 1 / mu) ** eps0
            for sign in (-1, 1):
                S_hat = entropy_from_trace(T * (1 + sign * eps), alpha)
                assert abs(S_hat - S) <= eps0 * abs(S) * (1 + 1e-9)


# ----------------------------------------------------------------- dispatcher

def test_dispatch_routes():
    A = build_kernel(np.random.default_rng(0).standard_normal((60, 2)))
    assert estimate_entropy(A, EstimatorParams(alpha=2, s=16)).method_used is Method.INT
    assert estimate_entropy(A, EstimatorParams(alpha=2, method="exact")).method_used is Method.EXACT
    est = estimate_entropy(A, EstimatorParams(alpha=1.5, s=16, m=20))
    assert est.method_used in (Method.TAYLOR, Method.CHEBYSHEV)
    assert est.bounds_used is not None
    with pytest.raises(DomainError):
        estimate_entropy(A, EstimatorParams(alpha=1.5, method="int"))


def test_auto_route_by_condition_number():
    flat = spd_with_spectrum(np.linspace(1, 3, 40) / np.linspace(1, 3, 40).sum(), np.random.default_rng(0))
    steep = spd_with_spectrum(np.geomspace(1, 1e4, 40) / np.geomspace(1, 1e4, 40).sum(), np.random.default_rng(0))
    p = EstimatorParams(alpha=1.5, s=16, m=20)
    assert estimate_entropy(flat, p).method_used is Method.TAYLOR
    assert estimate_entropy(steep, p).method_used is Method.CHEBYSHEV


def test_dispatch_is_deterministic():
    A = build_kernel(np.random.default_rng(1).standard_normal((80, 2)))
    p = EstimatorParams(alpha=2.5, s=24, m=20, seed=5)
    assert estimate_entropy(A, p).entropy == estimate_entropy(A, p).entropy


def test_params_validation():
    with pytest.raises(InputError):
        EstimatorParams(s=6)
    with pytest.raises(InputError):
        EstimatorParams(m=0)
    with pytest.raises(InputError):
        EstimatorParams(epsilon=1.5)
    with pytest.raises(ValueError):
        EstimatorParams(method="lanczos")
