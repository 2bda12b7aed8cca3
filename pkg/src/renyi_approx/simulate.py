"""Seeded Monte Carlo harness comparing estimators against the exact oracle.

One dataset is drawn from the two-component Gaussian mixture
``0.5 N(-c 1, I_d) + 0.5 N(c 1, I_d)``; its kernel and exact entropies are
computed once, then every ``(alpha, s, m)`` cell is run for ``trials``
estimator seeds.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .entropy import EstimatorParams, Method, entropy_exact, estimate_entropy, is_integer_alpha
from .errors import InputError
from .kernels import GaussianKernel, KernelSpec, build_kernel

__all__ = [
    "CellResult",
    "MreReport",
    "SimulationError",
    "SimulationSpec",
    "mixture_samples",
    "relative_errors",
    "run_simulation",
    "trial_seed",
]


def mixture_samples(n: int, d: int, center: float = 1.0, seed: int = 0) -> np.ndarray:
    """``n`` draws from ``0.5 N(-center, I_d) + 0.5 N(center, I_d)``."""
    rng = np.random.default_rng(seed)
    signs = np.where(rng.random(n) < 0.5, -1.0, 1.0)
    return signs[:, None] * center + rng.standard_normal((n, d))


def trial_seed(base_seed: int, trial: int) -> int:
    """Seed of trial ``trial``; independent of how many trials are run."""
    ss = np.random.SeedSequence(base_seed, spawn_key=(trial,))
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> 1)


def relative_errors(estimates: Iterable[float], exact: float) -> np.ndarray:
    est = np.asarray(list(estimates), dtype=np.float64)
    return np.abs(est - exact) / abs(exact)


@dataclass
class SimulationSpec:
    n: int = 1000
    d: int = 10
    center: float = 1.0
    kernel: KernelSpec = GaussianKernel(1.0)
    alphas: Sequence[float] = (2.0,)
    s_values: Sequence[int] = (10,)
    m_values: Sequence[Optional[int]] = (None,)
    trials: int = 100
    seed: int = 0
    method: Method = Method.AUTO
    jobs: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise InputError(f"trials must be >= 1, got {self.trials}")
        if self.n < 16:
            raise InputError(f"n must be >= 16, got {self.n}")
        if self.d < 1:
            raise InputError(f"d must be >= 1, got {self.d}")
        self.method = Method(self.method)
        if self.method is Method.EXACT:
            raise InputError("the exact method is the oracle; choose a randomized method")
        if not self.alphas or not self.s_values or not self.m_values:
            raise InputError("alpha, s and m lists must be non-empty")


@dataclass
class CellResult:
    alpha: float
    s: int
    m: Optional[int]
    method: str
    mre: float
    sd: float
    mean_elapsed: float
    oracle_elapsed: float
    trials: int

    @property
    def speedup(self) -> float:
        return self.oracle_elapsed / self.mean_elapsed if self.mean_elapsed > 0 else math.inf


@dataclass
class MreReport:
    spec: SimulationSpec
    cells: List[CellResult] = field(default_factory=list)

    FIELDS = ("alpha", "s", "m", "method", "mre", "sd", "mean_elapsed", "oracle_elapsed", "speedup", "trials")
    TIMING_FIELDS = ("mean_elapsed", "oracle_elapsed", "speedup")

    def to_csv(self, timing: bool = True) -> str:
        fields = [f for f in self.FIELDS if timing or f not in self.TIMING_FIELDS]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for c in self.cells:
            row = {
                "alpha": repr(float(c.alpha)),
                "s": c.s,
                "m": "" if c.m is None else c.m,
                "method": c.method,
                "mre": repr(c.mre),
                "sd": repr(c.sd),
                "mean_elapsed": f"{c.mean_elapsed:.6f}",
                "oracle_elapsed": f"{c.oracle_elapsed:.6f}",
                "speedup": f"{c.speedup:.3f}",
                "trials": c.trials,
            }
            w.writerow([row[f] for f in fields])
        return buf.getvalue()


class SimulationError(RuntimeError):
    def __init__(self, alpha, s, m, trial, cause):
        super().__init__(f"cell alpha={alpha}, s={s}, m={m}, trial {trial}: {cause}")
        self.cause = cause


def _cell_method(method: Method, alpha: float) -> Method:
    if method is Method.INT and not is_integer_alpha(alpha):
        raise InputError(f"method 'int' cannot run non-integer alpha {alpha}")
    if method in (Method.TAYLOR, Method.CHEBYSHEV) and is_integer_alpha(alpha):
        raise InputError(f"method {method.value!r} needs non-integer alpha, got {alpha}")
    return method


def run_simulation(spec: SimulationSpec, A=None) -> MreReport:
    """Run every ``(alpha, s, m)`` cell of ``spec``.

    ``A`` overrides the sampled mixture kernel (used for custom fixtures).
    """
    if A is None:
        A = build_kernel(mixture_samples(spec.n, spec.d, spec.center, spec.seed), spec.kernel)
    oracle = {}
    for alpha in dict.fromkeys(float(a) for a in spec.alphas):
        oracle[alpha] = entropy_exact(A, alpha)

    report = MreReport(spec)
    pool = ThreadPoolExecutor(max_workers=spec.jobs) if spec.jobs > 1 else None
    try:
        for alpha, s, m in itertools.product(spec.alphas, spec.s_values, spec.m_values):
            alpha = float(alpha)
            method = _cell_method(spec.method, alpha)
            m_cell = None if is_integer_alpha(alpha) and method in (Method.INT, Method.AUTO) else m

            def one(trial, alpha=alpha, s=s, m_cell=m_cell, method=method):
                params = EstimatorParams(alpha=alpha, method=method, s=s, m=m_cell, seed=trial_seed(spec.seed, trial))
                try:
                    return estimate_entropy(A, params)
                except Exception as exc:  # reported with cell coordinates
                    raise SimulationError(alpha, s, m_cell, trial, exc) from exc

            runs = list(pool.map(one, range(spec.trials))) if pool else [one(t) for t in range(spec.trials)]
            rel = relative_errors((r.entropy for r in runs), oracle[alpha].entropy)
            report.cells.append(
                CellResult(
                    alpha=alpha,
                    s=int(s),
                    m=None if is_integer_alpha(alpha) else runs[0].m_used,
                    method=runs[0].method_used.value,
                    mre=float(rel.mean()),
                    sd=float(rel.std()),
                    mean_elapsed=float(np.mean([r.elapsed for r in runs])),
                    oracle_elapsed=oracle[alpha].elapsed,
                    trials=spec.trials,
                )
            )
    finally:
        if pool:
            pool.shutdown()
    return report
