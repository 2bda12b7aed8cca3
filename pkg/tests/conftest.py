"""Shared fixtures.

Oracle values in the tests come from independent computations (scalar
arithmetic, dense eigendecomposition) or are frozen literals produced by
such oracles; none are read back from the code under test.
"""

import numpy as np
import pytest

from renyi_approx.kernels import GaussianKernel, NormalizedKernel, build_kernel
from renyi_approx.simulate import mixture_samples


def random_orthogonal(n, rng):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def spd_with_spectrum(eigs, rng):
    """Unit-trace symmetric matrix with the given eigenvalues in a random basis."""
    eigs = np.asarray(eigs, dtype=float)
    Q = random_orthogonal(eigs.size, rng)
    A = (Q * eigs) @ Q.T
    return 0.5 * (A + A.T)


def low_rank_psd(n, r, rng):
    X = rng.standard_normal((n, r))
    A = X @ X.T
    return A / np.trace(A)


@pytest.fixture(scope="session")
def mixture_kernel():
    """n=1000, d=10, sigma=1 Gaussian-mixture kernel shared by the benchmark-regime checks."""
    return build_kernel(mixture_samples(1000, 10, 1.0, seed=0), GaussianKernel(1.0))


@pytest.fixture(scope="session")
def mixture_eigs(mixture_kernel):
    return np.clip(np.linalg.eigvalsh(mixture_kernel.A), 0.0, 1.0)


@pytest.fixture
def rotated_diag():
    """diag(0.5, 0.3, 0.2) in a random orthogonal basis."""
    return spd_with_spectrum([0.5, 0.3, 0.2], np.random.default_rng(11))


@pytest.fixture
def iso3():
    return NormalizedKernel(np.eye(3) / 3)


def pytest_terminal_summary(terminalreporter):
    from acceptance_report import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
