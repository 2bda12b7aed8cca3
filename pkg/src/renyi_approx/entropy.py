"""Matrix-based Renyi entropy: exact oracle and randomized estimators.

``S_alpha(A) = log(tr(A**alpha)) / (1 - alpha)`` in nats.  The randomized
estimators replace ``tr(A**alpha)`` with a Hutch++ estimate of the trace of an
exact (integer ``alpha``) or polynomial (non-integer ``alpha``) surrogate.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from .errors import AlphaIsOne, DegenerateBounds, DomainError, InputError, NonPositiveTrace
from .hutchpp import SketchConfig, hutchpp
from .polyapprox import ChebyshevPower, IntPower, TaylorPower
from .spectrum import SpectrumBounds, estimate_bounds

__all__ = [
    "EntropyEstimate",
    "EstimatorParams",
    "Method",
    "MuBound",
    "check_alpha",
    "entropy_chebyshev",
    "entropy_exact",
    "entropy_from_trace",
    "entropy_int",
    "entropy_taylor",
    "estimate_entropy",
    "is_integer_alpha",
    "mu_bound",
    "select_params",
]

ALPHA_ONE_TOL = 1e-9
EXACT_MAX_N = 20_000
FLAT_SPECTRUM_KAPPA = 50.0


class Method(str, enum.Enum):
    EXACT = "exact"
    INT = "int"
    TAYLOR = "taylor"
    CHEBYSHEV = "chebyshev"
    AUTO = "auto"


@dataclass(frozen=True)
class EstimatorParams:
    """How to estimate an entropy.

    ``s`` and ``m`` left as ``None`` are chosen by :func:`select_params` from
    ``epsilon`` and ``delta``.
    """

    alpha: float = 2.0
    method: Method = Method.AUTO
    s: Optional[int] = None
    m: Optional[int] = None
    epsilon: float = 0.01
    delta: float = 0.05
    seed: int = 0
    bound_iters: int = 100
    bound_tol: float = 1e-6

    def __post_init__(self):
        check_alpha(self.alpha)
        object.__setattr__(self, "method", Method(self.method))
        if self.s is not None and (int(self.s) != self.s or self.s < 8):
            raise InputError(f"s must be an integer >= 8, got {self.s}")
        if self.m is not None and (int(self.m) != self.m or self.m < 1):
            raise InputError(f"m must be an integer >= 1, got {self.m}")
        if not 0 < self.epsilon < 1:
            raise InputError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if not 0 < self.delta < 1:
            raise InputError(f"delta must be in (0, 1), got {self.delta}")

    def with_seed(self, seed: int) -> "EstimatorParams":
        return replace(self, seed=int(seed))


@dataclass(frozen=True)
class EntropyEstimate:
    entropy: float
    trace_estimate: float
    method_used: Method
    alpha: float
    s_used: Optional[int] = None
    m_used: Optional[int] = None
    bounds_used: Optional[SpectrumBounds] = None
    elapsed: float = 0.0


@dataclass(frozen=True)
class MuBound:
    """``tr(A**alpha)`` when every eigenvalue sits at ``u`` or ``v``."""

    u: float
    v: float
    alpha: float
    n: int
    mu: float

    @property
    def interval(self) -> Tuple[float, float]:
        """Interval that must contain ``tr(A**alpha)``."""
        base = float(self.n) ** (1.0 - self.alpha)
        return min(self.mu, base), max(self.mu, base)


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > 0):
        raise DomainError(f"alpha must be a positive real, got {alpha}")
    if abs(alpha - 1.0) <= ALPHA_ONE_TOL:
        raise AlphaIsOne("alpha = 1 (Shannon limit) is not supported; the estimators diverge as alpha -> 1")
    return alpha


def is_integer_alpha(alpha: float) -> bool:
    return float(alpha) == int(alpha)


def entropy_from_trace(trace: float, alpha: float) -> float:
    """Map an information potential ``tr(A**alpha)`` to the entropy."""
    if not trace > 0:
        raise NonPositiveTrace(
            f"trace estimate {trace!r} is not positive; increase s (or m) for this matrix"
        )
    return math.log(trace) / (1.0 - alpha)


def _kernel_matrix(A) -> np.ndarray:
    M = np.asarray(A, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InputError(f"kernel matrix must be square, got shape {M.shape}")
    return M


def entropy_exact(A, alpha: float) -> EntropyEstimate:
    """Reference value from a full symmetric eigendecomposition."""
    alpha = check_alpha(alpha)
    M = _kernel_matrix(A)
    if M.shape[0] > EXACT_MAX_N:
        raise InputError(f"exact entropy refused for n = {M.shape[0]} > {EXACT_MAX_N}")
    t0 = time.perf_counter()
    lam = np.clip(np.linalg.eigvalsh(M), 0.0, 1.0)
    trace = float(np.sum(lam[lam > 0] ** alpha))
    return EntropyEstimate(
        entropy=entropy_from_trace(trace, alpha),
        trace_estimate=trace,
        method_used=Method.EXACT,
        alpha=alpha,
        elapsed=time.perf_counter() - t0,
    )


def _estimate(spec, A, alpha, s, seed, method, m=None, bounds=None, t0=None):
    t0 = time.perf_counter() if t0 is None else t0
    est = hutchpp(spec, A, SketchConfig(s=s, seed=seed))
    return EntropyEstimate(
        entropy=entropy_from_trace(est.value, alpha),
        trace_estimate=est.value,
        method_used=method,
        alpha=alpha,
        s_used=s,
        m_used=m,
        bounds_used=bounds,
        elapsed=time.perf_counter() - t0,
    )


def entropy_int(A, alpha: int, s: int, seed: int = 0) -> EntropyEstimate:
    """Integer-order estimate: Hutch++ on ``A**alpha``."""
    check_alpha(alpha)
    if not is_integer_alpha(alpha) or alpha < 2:
        raise DomainError(f"entropy_int needs an integer alpha >= 2, got {alpha}")
    alpha = int(alpha)
    M = _kernel_matrix(A)
    return _estimate(IntPower(alpha), M, alpha, s, seed, Method.INT, m=alpha)


def _require_fractional(alpha, name):
    alpha = check_alpha(alpha)
    if is_integer_alpha(alpha):
        raise DomainError(f"{name} is for non-integer alpha; use entropy_int for alpha = {alpha}")
    return alpha


def entropy_taylor(A, alpha: float, s: int, m: int, v: float, seed: int = 0) -> EntropyEstimate:
    """Non-integer order estimate from a degree-``m`` Taylor series around ``v``."""
    alpha = _require_fractional(alpha, "entropy_taylor")
    if m < math.ceil(alpha) + 1:
        raise InputError(f"Taylor degree m must be >= ceil(alpha) + 1 = {math.ceil(alpha) + 1}, got {m}")
    M = _kernel_matrix(A)
    spec = TaylorPower(alpha, int(m), float(v))
    bounds = SpectrumBounds(u=0.0, v=float(v), n=M.shape[0])
    return _estimate(spec, M, alpha, s, seed, Method.TAYLOR, m=int(m), bounds=bounds)


def entropy_chebyshev(A, alpha: float, s: int, m: int, u: float, v: float, seed: int = 0) -> EntropyEstimate:
    """Non-integer order estimate from a degree-``m`` Chebyshev series on ``[u, v]``.

    ``v`` is widened by the safeguard before the coefficients are built; the
    widened value is reported in ``bounds_used``.
    """
    alpha = _require_fractional(alpha, "entropy_chebyshev")
    M = _kernel_matrix(A)
    spec = ChebyshevPower(alpha, int(m), float(u), float(v))
    bounds = SpectrumBounds(u=float(u), v=spec.v, n=M.shape[0], rank_deficient=u == 0)
    return _estimate(spec, M, alpha, s, seed, Method.CHEBYSHEV, m=int(m), bounds=bounds)


def _round_up(x: float, step: int) -> int:
    return int(step * math.ceil(x / step))


def select_params(
    alpha: float,
    epsilon: float,
    delta: float,
    bounds: Optional[SpectrumBounds],
    method: Method,
) -> Tuple[int, Optional[int]]:
    """Query budget ``s`` and degree ``m`` from the asymptotic prescriptions.

    Every hidden constant is taken as 1, so these are heuristics; pass ``s``
    and ``m`` explicitly for precise control.  ``m`` is ``None`` for the
    integer method.
    """
    alpha = check_alpha(alpha)
    method = Method(method)
    if not 0 < epsilon < 1 or not 0 < delta < 1:
        raise InputError("epsilon and delta must lie in (0, 1)")
    log_d = math.log(1.0 / delta)
    scale = 1.0 / (epsilon * abs(alpha - 1.0))
    s = max(8, _round_up(scale * math.sqrt(log_d) + log_d, 4))
    if method in (Method.INT, Method.EXACT):
        return s, None
    if bounds is None:
        raise InputError("spectrum bounds are required to choose a polynomial degree")
    u, v, n = bounds.u, bounds.v, bounds.n
    if method is Method.TAYLOR:
        if u > 0:
            m = math.ceil((v / u) * math.log(scale))
        else:
            m = math.ceil((v * n) ** (1.0 / min(1.0, alpha)) * scale ** (1.0 / alpha))
        m = max(m, math.ceil(alpha) + 1)
    elif method is Method.CHEBYSHEV:
        if u > 0:
            kappa = v / u
            m = math.ceil(math.sqrt(kappa) * math.log(kappa * scale))
        else:
            m = math.ceil((v * n) ** (1.0 / (2.0 * min(1.0, alpha))) * scale ** (1.0 / (2.0 * alpha)))
    else:
        raise InputError(f"select_params does not handle method {method.value!r}")
    return s, max(int(m), 1)


def mu_bound(u: float, v: float, alpha: float, n: int) -> MuBound:
    """Extremal information potential for spectra supported on ``{u, v}``."""
    alpha = float(alpha)
    inv_n = 1.0 / n
    if v <= u:
        if math.isclose(u, inv_n, rel_tol=1e-12) and math.isclose(v, inv_n, rel_tol=1e-12):
            return MuBound(u, v, alpha, n, float(n) ** (1.0 - alpha))
        raise DegenerateBounds(f"need u < v unless u = v = 1/n; got u={u}, v={v}")
    if not (0 <= u <= inv_n * (1 + 1e-12) and inv_n * (1 - 1e-12) <= v <= 1):
        raise DomainError(f"need 0 <= u <= 1/n <= v <= 1; got u={u}, v={v}, n={n}")
    mu = (1.0 - u * n) / (v - u) * v**alpha
    if u > 0:
        mu += (v * n - 1.0) / (v - u) * u**alpha
    return MuBound(u, v, alpha, n, mu)


def _auto_method(alpha: float, bounds: SpectrumBounds) -> Method:
    if is_integer_alpha(alpha):
        return Method.INT
    if bounds.u > 0 and bounds.kappa <= FLAT_SPECTRUM_KAPPA:
        return Method.TAYLOR
    if bounds.u == 0 and bounds.v * bounds.n <= FLAT_SPECTRUM_KAPPA:
        return Method.TAYLOR
    return Method.CHEBYSHEV


def estimate_entropy(A, params: EstimatorParams) -> EntropyEstimate:
    """Dispatch to the estimator selected by ``params``.

    Spectrum bounds are estimated only when the method needs them or when
    ``s``/``m`` must be chosen automatically.
    """
    t0 = time.perf_counter()
    M = _kernel_matrix(A)
    alpha = params.alpha
    method = params.method

    if method is Method.EXACT:
        return entropy_exact(M, alpha)
    if method is Method.INT and not is_integer_alpha(alpha):
        raise DomainError(f"method 'int' needs an integer alpha, got {alpha}")

    bounds = None
    needs_bounds = method in (Method.TAYLOR, Method.CHEBYSHEV) or (
        method is Method.AUTO and not is_integer_alpha(alpha)
    )
    if needs_bounds:
        bounds = estimate_bounds(M, max_iters=params.bound_iters, tol=params.bound_tol, seed=params.seed)
    if method is Method.AUTO:
        method = _auto_method(alpha, bounds) if bounds is not None else Method.INT

    s, m = params.s, params.m
    if s is None or (m is None and method is not Method.INT):
        s_auto, m_auto = select_params(alpha, params.epsilon, params.delta, bounds, method)
        s = s_auto if s is None else s
        m = m_auto if m is None else m

    if method is Method.INT:
        est = entropy_int(M, int(alpha), s, params.seed)
    elif method is Method.TAYLOR:
        est = entropy_taylor(M, alpha, s, m, bounds.v, params.seed)
    else:
        est = entropy_chebyshev(M, alpha, s, m, bounds.u, bounds.v, params.seed)
    return replace(est, bounds_used=bounds if method is not Method.INT else None, elapsed=time.perf_counter() - t0)
