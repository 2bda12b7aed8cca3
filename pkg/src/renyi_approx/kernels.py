"""Normalized Gram matrices and their Hadamard combinations.

A normalized kernel has entries ``A_ij = K_ij / (n * sqrt(K_ii * K_jj))``, so
its diagonal is constant ``1/n`` and its trace is one.  Joint kernels are
normalized elementwise products of per-variable kernels.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import InputError, NonFinite, SizeMismatch, ZeroDiagonal

__all__ = [
    "GaussianKernel",
    "PolynomialKernel",
    "KernelSpec",
    "NormalizedKernel",
    "as_samples",
    "build_kernel",
    "constant_kernel",
    "hadamard_joint",
    "parse_kernel_spec",
]


@dataclass(frozen=True)
class GaussianKernel:
    """``exp(-||x - y||^2 / (2 sigma^2))``."""

    sigma: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise InputError(f"Gaussian kernel needs sigma > 0, got {self.sigma}")


@dataclass(frozen=True)
class PolynomialKernel:
    """``(x . y + offset) ** degree``."""

    degree: int = 2
    offset: float = 1.0

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 1:
            raise InputError(f"polynomial degree must be a positive integer, got {self.degree}")
        if not (np.isfinite(self.offset) and self.offset >= 0):
            raise InputError(f"polynomial offset must be >= 0, got {self.offset}")


KernelSpec = Union[GaussianKernel, PolynomialKernel]


def parse_kernel_spec(text: str) -> KernelSpec:
    """Parse ``gaussian:sigma=1`` or ``poly:p=2,r=1`` into a kernel spec.

    >>> parse_kernel_spec("poly:p=3")
    PolynomialKernel(degree=3, offset=1.0)
    """
    kind, _, rest = text.strip().partition(":")
    params = {}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"malformed kernel parameter {item!r} in {text!r}")
        try:
            params[key.strip().lower()] = float(value)
        except ValueError:
            raise InputError(f"kernel parameter {key!r} is not a number: {value!r}") from None
    kind = kind.strip().lower()
    if kind in ("gaussian", "rbf", "gauss"):
        unknown = set(params) - {"sigma"}
        if unknown:
            raise InputError(f"unknown Gaussian kernel parameters: {sorted(unknown)}")
        return GaussianKernel(sigma=params.get("sigma", 1.0))
    if kind in ("poly", "polynomial"):
        unknown = set(params) - {"p", "r"}
        if unknown:
            raise InputError(f"unknown polynomial kernel parameters: {sorted(unknown)}")
        p = params.get("p", 2.0)
        if p != int(p):
            raise InputError(f"polynomial degree must be an integer, got {p}")
        return PolynomialKernel(degree=int(p), offset=params.get("r", 1.0))
    raise InputError(f"unknown kernel kind {kind!r}; expected 'gaussian' or 'poly'")


class NormalizedKernel:
    """Immutable unit-trace SPD Gram matrix.

    The wrapped array is marked read-only so instances can be shared freely
    between threads.
    """

    __slots__ = ("_A",)

    def __init__(self, A):
        A = np.array(A, dtype=np.float64, copy=True)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise SizeMismatch(f"kernel matrix must be square, got shape {A.shape}")
        A.setflags(write=False)
        self._A = A

    @property
    def A(self) -> np.ndarray:
        return self._A

    @property
    def n(self) -> int:
        return self._A.shape[0]

    @property
    def shape(self):
        return self._A.shape

    def __array__(self, dtype=None, copy=None):
        if dtype is None or dtype == self._A.dtype:
            return self._A if not copy else self._A.copy()
        return self._A.astype(dtype)

    def __matmul__(self, other):
        return self._A @ other

    def __repr__(self):
        return f"NormalizedKernel(n={self.n})"


def as_samples(samples) -> np.ndarray:
    """Coerce samples to a finite float array of shape ``(n, d)``."""
    X = np.asarray(samples, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise InputError(f"samples must be a 1-D or 2-D array, got {X.ndim} dimensions")
    if X.shape[0] < 2:
        raise InputError(f"need at least 2 samples, got {X.shape[0]}")
    if not np.all(np.isfinite(X)):
        raise NonFinite("samples contain NaN or infinite values")
    return X


def _mirror_upper(M: np.ndarray) -> np.ndarray:
    # exact symmetry: copy the upper triangle onto the lower one
    iu = np.triu_indices(M.shape[0], 1)
    M[(iu[1], iu[0])] = M[iu]
    return M


def build_kernel(samples, spec: KernelSpec = GaussianKernel()) -> NormalizedKernel:
    """Build the normalized Gram matrix of ``samples`` under ``spec``.

    Parameters
    ----------
    samples : array_like, shape (n, d) or (n,)
        One row per sample.
    spec : GaussianKernel or PolynomialKernel

    Returns
    -------
    NormalizedKernel
        Symmetric, diagonal exactly ``1/n``, trace one.
    """
    X = as_samples(samples)
    n = X.shape[0]
    G = X @ X.T
    if isinstance(spec, GaussianKernel):
        sq = np.einsum("ij,ij->i", X, X)
        D = sq[:, None] + sq[None, :] - 2.0 * G
        np.maximum(D, 0.0, out=D)
        K = np.exp(-D / (2.0 * spec.sigma**2))
        diag = np.ones(n)
    elif isinstance(spec, PolynomialKernel):
        with np.errstate(over="ignore", invalid="ignore"):
            K = (G + spec.offset) ** spec.degree
        diag = np.diag(K).copy()
    else:
        raise InputError(f"unsupported kernel spec {spec!r}")

    if not np.all(np.isfinite(K)):
        raise NonFinite("kernel evaluation produced non-finite values")
    if np.any(diag <= 0):
        bad = int(np.flatnonzero(diag <= 0)[0])
        raise ZeroDiagonal(f"kernel diagonal K[{bad},{bad}] = {diag[bad]} is not positive")

    scale = 1.0 / np.sqrt(diag)
    A = K * scale[:, None] * scale[None, :] / n
    _mirror_upper(A)
    np.fill_diagonal(A, 1.0 / n)
    return NormalizedKernel(A)


def constant_kernel(n: int) -> NormalizedKernel:
    """Kernel of a deterministic variable: every entry ``1/n``."""
    if n < 2:
        raise InputError("n must be at least 2")
    return NormalizedKernel(np.full((n, n), 1.0 / n))


def _canonical_key(A: np.ndarray) -> bytes:
    return hashlib.blake2b(np.ascontiguousarray(A).tobytes(), digest_size=16).digest()


def hadamard_joint(kernels: Sequence[NormalizedKernel]) -> NormalizedKernel:
    """Normalized Hadamard product ``(A_1 o ... o A_L) / tr(A_1 o ... o A_L)``.

    Operands are multiplied in a canonical (content-hash) order so the result
    does not depend on how the list is ordered, bit for bit.
    """
    mats = [np.asarray(k) for k in kernels]
    if len(mats) < 2:
        raise InputError(f"hadamard_joint needs at least 2 kernels, got {len(mats)}")
    n = mats[0].shape[0]
    for M in mats:
        if M.shape != (n, n):
            raise SizeMismatch(f"kernel sizes differ: {M.shape} vs {(n, n)}")
    mats.sort(key=_canonical_key)
    P = mats[0].copy()
    for M in mats[1:]:
        P *= M
    # diagonals are all 1/n, so the trace is n * n**-L exactly
    P /= n * float(n) ** (-len(mats))
    np.fill_diagonal(P, 1.0 / n)
    return NormalizedKernel(P)
