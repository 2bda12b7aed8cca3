"""Extreme-eigenvalue estimates for normalized kernels via power iteration.

The polynomial estimators need an interval ``[u, v]`` containing the spectrum.
For a unit-trace PSD matrix ``u <= 1/n <= v <= 1`` always holds, which is
used to clamp the estimates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError

__all__ = ["SpectrumBounds", "estimate_bounds", "estimate_u", "estimate_v"]

DEFAULT_MAX_ITERS = 100
DEFAULT_TOL = 1e-6
RANK_DEFICIENT_FLOOR = 1e-12


@dataclass(frozen=True)
class SpectrumBounds:
    """Estimated eigenvalue interval of a normalized kernel.

    ``kappa`` is ``inf`` when ``u == 0`` (rank-deficient case).
    """

    u: float
    v: float
    n: int
    iterations_used: int = 0
    converged: bool = True
    rank_deficient: bool = False

    @property
    def kappa(self) -> float:
        return math.inf if self.u == 0 else self.v / self.u


def _matrix(A) -> np.ndarray:
    return np.asarray(A, dtype=np.float64)


def _start_vector(n: int, seed: int) -> np.ndarray:
    x = np.random.default_rng(seed).standard_normal(n)
    return x / np.linalg.norm(x)


def _power_iteration(matvec, n, max_iters, tol, seed, scale_of):
    """Rayleigh-quotient power iteration.

    Stops when the change of ``scale_of(rq)`` between successive iterations is
    below ``tol`` relative to its magnitude.  Returns ``(rq, iters, converged)``.
    """
    x = _start_vector(n, seed)
    y = matvec(x)
    rq = float(x @ y)
    prev = scale_of(rq)
    for it in range(1, max_iters + 1):
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return 0.0, it, True
        x = y / norm
        y = matvec(x)
        rq = float(x @ y)
        cur = scale_of(rq)
        if abs(cur - prev) <= tol * abs(cur):
            return rq, it, True
        prev = cur
    return rq, max_iters, False


def _check_iter_args(max_iters, tol):
    if max_iters < 1:
        raise InputError(f"max_iters must be >= 1, got {max_iters}")
    if not tol > 0:
        raise InputError(f"tol must be positive, got {tol}")


def _estimate_v(A, max_iters, tol, seed):
    M = _matrix(A)
    n = M.shape[0]
    rq, iters, converged = _power_iteration(lambda x: M @ x, n, max_iters, tol, seed, lambda r: r)
    v = min(max(rq * (1.0 + tol), 1.0 / n), 1.0)
    return v, iters, converged


def _estimate_u(A, v, max_iters, tol, seed, floor):
    M = _matrix(A)
    n = M.shape[0]
    # the estimate is u = v - rq, so convergence is judged on u itself
    rq, iters, converged = _power_iteration(
        lambda x: v * x - M @ x, n, max_iters, tol, seed, lambda r: max(v - r, 0.0)
    )
    u = (v - rq) * (1.0 - tol)
    u = min(max(u, 0.0), 1.0 / n)
    rank_deficient = u < floor
    if rank_deficient:
        u = 0.0
    return u, iters, converged, rank_deficient


def estimate_v(A, max_iters: int = DEFAULT_MAX_ITERS, tol: float = DEFAULT_TOL, seed: int = 0) -> float:
    """Upper eigenvalue estimate of ``A``.

    The Rayleigh quotient from power iteration is inflated by ``1 + tol`` and
    clamped to ``[1/n, 1]``.  This is a safety margin, not a guarantee.
    """
    _check_iter_args(max_iters, tol)
    return _estimate_v(A, max_iters, tol, seed)[0]


def estimate_u(
    A,
    v: float,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    floor: float = RANK_DEFICIENT_FLOOR,
) -> float:
    """Lower eigenvalue estimate of ``A`` from power iteration on ``v I - A``.

    Returns ``(v - lambda_max(vI - A)) * (1 - tol)`` clamped to ``[0, 1/n]``;
    estimates below ``floor`` are reported as exactly 0.
    """
    _check_iter_args(max_iters, tol)
    return _estimate_u(A, v, max_iters, tol, seed, floor)[0]


def estimate_bounds(
    A,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    floor: float = RANK_DEFICIENT_FLOOR,
) -> SpectrumBounds:
    """Estimate both ends of the spectrum and collect diagnostics."""
    _check_iter_args(max_iters, tol)
    n = _matrix(A).shape[0]
    v, it_v, conv_v = _estimate_v(A, max_iters, tol, seed)
    u, it_u, conv_u, deficient = _estimate_u(A, v, max_iters, tol, seed + 1, floor)
    return SpectrumBounds(
        u=u,
        v=v,
        n=n,
        iterations_used=it_v + it_u,
        converged=conv_v and conv_u,
        rank_deficient=deficient,
    )
