"""Feature ranking and greedy forward selection by matrix-based Renyi MI."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .entropy import EstimatorParams, estimate_entropy
from .errors import InputError, RenyiError
from .kernels import GaussianKernel, KernelSpec, NormalizedKernel, build_kernel, hadamard_joint
from .measures import derive_seed, mutual_information_terms

__all__ = [
    "Dataset",
    "RankingResult",
    "SelectionResult",
    "label_kernel",
    "one_hot",
    "rank_features",
    "select_features",
]


@dataclass
class Dataset:
    features: np.ndarray
    names: List[str]
    labels: Optional[np.ndarray] = None

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        if self.features.ndim != 2:
            raise InputError("features must be a 2-D array")
        n, d = self.features.shape
        if n < 2:
            raise InputError(f"need at least 2 samples, got {n}")
        if len(self.names) != d:
            raise InputError(f"{len(self.names)} names for {d} feature columns")
        self.names = [str(x) for x in self.names]
        if self.labels is not None:
            self.labels = np.asarray(self.labels)
            if self.labels.shape != (n,):
                raise InputError(f"labels must have shape ({n},), got {self.labels.shape}")

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]


@dataclass
class RankingResult:
    names: List[str]
    scores: List[float]
    indices: List[int]
    elapsed: List[float] = field(default_factory=list)


@dataclass
class SelectionResult:
    names: List[str]
    indices: List[int]
    objective: List[float]
    elapsed: List[float] = field(default_factory=list)


def one_hot(labels) -> np.ndarray:
    """Indicator embedding of categorical labels, classes in sorted order."""
    labels = np.asarray(labels)
    _, inverse = np.unique(labels, return_inverse=True)
    inverse = inverse.reshape(-1)
    out = np.zeros((labels.shape[0], int(inverse.max()) + 1))
    out[np.arange(labels.shape[0]), inverse] = 1.0
    return out


def label_kernel(labels, kernel: KernelSpec = GaussianKernel()) -> NormalizedKernel:
    return build_kernel(one_hot(labels), kernel)


def _check(data: Dataset, k: int):
    if data.labels is None:
        raise InputError("dataset has no label column")
    if not 1 <= k <= data.d:
        raise InputError(f"k must be between 1 and the number of features ({data.d}), got {k}")


def _annotate(exc: RenyiError, name: str) -> RenyiError:
    exc.args = (f"feature {name!r}: {exc.args[0] if exc.args else exc}",) + exc.args[1:]
    return exc


def _target_entropy(target, params):
    return estimate_entropy(target, params.with_seed(derive_seed(params.seed, "target")))


def rank_features(data: Dataset, kernel: KernelSpec, params: EstimatorParams, k: int) -> RankingResult:
    """Score each feature by ``I_alpha(X_i; Y)`` and return the top ``k``.

    All features share ``params.seed``; ties keep the original column order.
    """
    _check(data, k)
    target = label_kernel(data.labels, kernel)
    s_target = _target_entropy(target, params)
    scores, times = [], []
    for j, name in enumerate(data.names):
        t0 = time.perf_counter()
        try:
            kj = build_kernel(data.features[:, j], kernel)
            scores.append(mutual_information_terms([kj], target, params, s_target=s_target).value)
        except RenyiError as exc:
            raise _annotate(exc, name)
        times.append(time.perf_counter() - t0)
    order = sorted(range(data.d), key=lambda j: (-scores[j], j))[:k]
    return RankingResult(
        names=[data.names[j] for j in order],
        scores=[scores[j] for j in order],
        indices=order,
        elapsed=[times[j] for j in order],
    )


def _step_seed(seed: int, step: int) -> int:
    return seed if step == 0 else derive_seed(seed, f"step-{step}")


def select_features(data: Dataset, kernel: KernelSpec, params: EstimatorParams, k: int) -> SelectionResult:
    """Greedy forward selection maximizing ``I_alpha(S_sub; Y)``.

    The normalized Hadamard product of the already selected kernels is cached
    and combined with each candidate in turn.  Candidates within one step
    share that step's seed; step 0 uses ``params.seed`` itself, so ``k = 1``
    agrees with :func:`rank_features`.
    """
    _check(data, k)
    target = label_kernel(data.labels, kernel)
    feature_kernels = {}

    def kernel_of(j):
        if j not in feature_kernels:
            try:
                feature_kernels[j] = build_kernel(data.features[:, j], kernel)
            except RenyiError as exc:
                raise _annotate(exc, data.names[j])
        return feature_kernels[j]

    chosen: List[int] = []
    objective, times = [], []
    current: Optional[NormalizedKernel] = None
    for step in range(k):
        t0 = time.perf_counter()
        step_params = params.with_seed(_step_seed(params.seed, step))
        s_target = _target_entropy(target, step_params)
        best_j, best_val = -1, -np.inf
        for j in range(data.d):
            if j in chosen:
                continue
            kj = kernel_of(j)
            cand = kj if current is None else hadamard_joint([current, kj])
            try:
                val = mutual_information_terms([cand], target, step_params, s_target=s_target).value
            except RenyiError as exc:
                raise _annotate(exc, data.names[j])
            if val > best_val:
                best_j, best_val = j, val
        chosen.append(best_j)
        objective.append(float(best_val))
        current = kernel_of(best_j) if current is None else hadamard_joint([current, kernel_of(best_j)])
        times.append(time.perf_counter() - t0)
    return SelectionResult(
        names=[data.names[j] for j in chosen],
        indices=chosen,
        objective=objective,
        elapsed=times,
    )
