"""Implicit matrix powers ``A**alpha`` through matrix-vector products.

Three representations are provided:

* :class:`IntPower` -- exact ``A**alpha`` for integer ``alpha`` (``alpha``
  successive products).
* :class:`TaylorPower` -- truncated binomial series
  ``v**alpha * sum_k binom(alpha, k) (A/v - I)**k`` around the upper
  eigenvalue bound ``v``.
* :class:`ChebyshevPower` -- Chebyshev interpolant of ``lambda**alpha`` on
  ``[u, v]``, evaluated with the three-term recurrence.

All of them expose ``query_cost`` (products with ``A`` per application) and
are applied with :func:`apply`, which accepts a vector or a block of column
vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DomainError, InputError, SizeMismatch

__all__ = [
    "BinomialSeries",
    "ChebyshevPower",
    "IntPower",
    "MatrixFunctionSpec",
    "TaylorPower",
    "apply",
    "binomial_coeffs",
    "chebyshev_coeffs",
    "chebyshev_error_bound",
    "chebyshev_safeguard",
    "evaluate_scalar",
    "taylor_error_bound",
    "taylor_tail_constant",
]


@dataclass(frozen=True)
class BinomialSeries:
    alpha: float
    coefficients: np.ndarray

    def __len__(self):
        return len(self.coefficients)


def binomial_coeffs(alpha: float, m: int) -> BinomialSeries:
    """``binom(alpha, k)`` for ``k = 0..m`` via ``b_{k+1} = b_k (alpha - k) / (k + 1)``."""
    if m < 0:
        raise InputError(f"m must be >= 0, got {m}")
    b = np.empty(m + 1)
    b[0] = 1.0
    for k in range(m):
        b[k + 1] = b[k] * (alpha - k) / (k + 1)
    b.setflags(write=False)
    return BinomialSeries(float(alpha), b)


def chebyshev_coeffs(alpha: float, m: int, u: float, v: float) -> np.ndarray:
    """Chebyshev interpolation coefficients of ``lambda**alpha`` on ``[u, v]``.

    ``c_k = 2/(m+1) * sum_i f(g(x_i)) T_k(x_i)`` with the ``m + 1`` Chebyshev
    nodes ``x_i = cos(pi (i + 1/2) / (m + 1))`` and ``g`` the affine map from
    ``[-1, 1]`` onto ``[u, v]``.  The series is ``c_0/2 + sum_{k>=1} c_k T_k``.

    ``u`` may be negative only for the bare node formula with integer
    ``alpha``; the entropy path always has ``0 <= u < v``.
    """
    if m < 1:
        raise InputError(f"m must be >= 1, got {m}")
    if not v > u:
        raise DomainError(f"need v > u, got u={u}, v={v}")
    if u < 0 and float(alpha) != int(alpha):
        raise DomainError(f"u must be >= 0 for non-integer alpha, got u={u}")
    N = m + 1
    theta = np.pi * (np.arange(N) + 0.5) / N
    lam = 0.5 * (v - u) * np.cos(theta) + 0.5 * (v + u)
    if u >= 0:
        lam = np.maximum(lam, 0.0)
    f = lam**alpha
    T = np.cos(np.outer(np.arange(N), theta))
    return (2.0 / N) * (T @ f)


def chebyshev_safeguard(u: float, v: float) -> float:
    """Widen ``v`` to ``max(v, u + 2 sqrt(2u - u^2))``.

    Guarantees the Bernstein ellipse used by the error bound lies inside the
    disc where the binomial series of ``lambda**alpha`` converges.  A no-op
    for ``u == 0``.
    """
    return max(v, u + 2.0 * math.sqrt(max(2.0 * u - u * u, 0.0)))


@dataclass(frozen=True)
class IntPower:
    alpha: int

    def __post_init__(self):
        if int(self.alpha) != self.alpha or self.alpha < 1:
            raise InputError(f"IntPower needs a positive integer alpha, got {self.alpha}")

    @property
    def query_cost(self) -> int:
        return int(self.alpha)


@dataclass(frozen=True)
class TaylorPower:
    alpha: float
    m: int
    v: float
    coeffs: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.m < 1:
            raise InputError(f"Taylor degree m must be >= 1, got {self.m}")
        if not 0 < self.v <= 1:
            raise DomainError(f"Taylor expansion point v must be in (0, 1], got {self.v}")
        object.__setattr__(self, "coeffs", binomial_coeffs(self.alpha, self.m).coefficients)

    @property
    def query_cost(self) -> int:
        return self.m


@dataclass(frozen=True)
class ChebyshevPower:
    """Chebyshev representation; ``v`` is widened by :func:`chebyshev_safeguard`."""

    alpha: float
    m: int
    u: float
    v: float
    coeffs: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.m < 1:
            raise InputError(f"Chebyshev degree m must be >= 1, got {self.m}")
        if not 0 <= self.u <= self.v <= 1:
            raise DomainError(f"need 0 <= u <= v <= 1, got u={self.u}, v={self.v}")
        v = chebyshev_safeguard(self.u, self.v)
        if not v > self.u:
            raise DomainError(f"empty interval after safeguard: u={self.u}, v={v}")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "coeffs", chebyshev_coeffs(self.alpha, self.m, self.u, v))

    @property
    def query_cost(self) -> int:
        return self.m


MatrixFunctionSpec = Union[IntPower, TaylorPower, ChebyshevPower]


def _operand(A):
    M = np.asarray(A, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise SizeMismatch(f"matrix must be square, got shape {M.shape}")
    return M


def apply(spec: MatrixFunctionSpec, A, x) -> np.ndarray:
    """Return ``p(A) @ x`` using only products with ``A``.

    ``x`` may be a vector of length ``n`` or an ``(n, k)`` block; the block
    is processed column-wise in one pass.
    """
    M = _operand(A)
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] != M.shape[0]:
        raise SizeMismatch(f"vector length {x.shape[0]} does not match matrix size {M.shape[0]}")

    if isinstance(spec, IntPower):
        y = x
        for _ in range(spec.query_cost):
            y = M @ y
        return y if y is not x else y.copy()

    if isinstance(spec, TaylorPower):
        b, v = spec.coeffs, spec.v
        y = x
        acc = b[0] * x
        for k in range(1, spec.m + 1):
            y = (M @ y) / v - y
            acc += b[k] * y
        return acc * v**spec.alpha

    if isinstance(spec, ChebyshevPower):
        c, u, v = spec.coeffs, spec.u, spec.v
        a1, a0 = 2.0 / (v - u), (v + u) / (v - u)
        t_prev = x
        t_cur = a1 * (M @ x) - a0 * x
        acc = 0.5 * c[0] * x + c[1] * t_cur
        for k in range(2, spec.m + 1):
            t_prev, t_cur = t_cur, 2.0 * (a1 * (M @ t_cur) - a0 * t_cur) - t_prev
            acc += c[k] * t_cur
        return acc

    raise InputError(f"unsupported matrix function spec {spec!r}")


def evaluate_scalar(spec: MatrixFunctionSpec, lam) -> np.ndarray:
    """Evaluate the polynomial represented by ``spec`` at scalar points."""
    lam = np.asarray(lam, dtype=np.float64)
    if isinstance(spec, IntPower):
        return lam**spec.alpha
    if isinstance(spec, TaylorPower):
        B = lam / spec.v - 1.0
        return spec.v**spec.alpha * np.polynomial.polynomial.polyval(B, spec.coeffs)
    if isinstance(spec, ChebyshevPower):
        x = (2.0 * lam - (spec.v + spec.u)) / (spec.v - spec.u)
        c = spec.coeffs.copy()
        c[0] *= 0.5
        return np.polynomial.chebyshev.chebval(x, c)
    raise InputError(f"unsupported matrix function spec {spec!r}")


def taylor_tail_constant(alpha: float, kmax: int = 10_000) -> float:
    """``C = max_k |binom(alpha, ceil(alpha)+k+1) / binom(alpha, k)|`` over ``k <= kmax``.

    The ratio is a finite product, so it is accumulated directly rather than
    from the (underflowing) binomial coefficients themselves.
    """
    shift = math.ceil(alpha) + 1
    i = np.arange(kmax + 1)[:, None] + np.arange(shift)[None, :]
    with np.errstate(divide="ignore"):
        terms = np.abs((alpha - i) / (i + 1.0))
    ratios = np.prod(terms, axis=1)
    return float(np.max(ratios))


def taylor_error_bound(alpha: float, m: int, u: float, v: float, lam) -> np.ndarray:
    """Pointwise tail bound ``C |u/v - 1|^(m+1) lam^alpha`` for the Taylor series."""
    lam = np.asarray(lam, dtype=np.float64)
    return taylor_tail_constant(alpha) * abs(u / v - 1.0) ** (m + 1) * lam**alpha


def chebyshev_error_bound(alpha: float, m: int, u: float, v: float) -> float:
    """Uniform bound ``4M / ((K - 1) K^m)`` on ``[u, v]`` for the Chebyshev series.

    ``beta = 2u/(v - u)``, ``K = 1 + beta + sqrt(beta^2 + 2 beta)`` and
    ``M = (1 + beta)^alpha``.  Infinite when ``u == 0``.
    """
    if u <= 0:
        return math.inf
    beta = 2.0 * u / (v - u)
    K = 1.0 + beta + math.sqrt(beta * beta + 2.0 * beta)
    M = (1.0 + beta) ** alpha
    return 4.0 * M / ((K - 1.0) * K**m)
