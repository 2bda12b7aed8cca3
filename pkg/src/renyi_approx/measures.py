"""Joint entropy, conditional entropy and mutual information on kernels.

Every entropy term is estimated with its own seed, derived from the caller's
seed and the role of the term (``"vars"``, ``"target"``, ``"joint"``), so the
terms are independent yet the whole computation is reproducible and does not
depend on the order in which variables are listed.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .entropy import EntropyEstimate, EstimatorParams, estimate_entropy
from .errors import InputError, SizeMismatch
from .kernels import NormalizedKernel, hadamard_joint

__all__ = [
    "MutualInformation",
    "VariableSet",
    "conditional_entropy",
    "derive_seed",
    "joint_entropy",
    "joint_kernel",
    "mutual_information",
    "mutual_information_terms",
]

VariableSet = Union[Sequence[NormalizedKernel], Mapping[str, NormalizedKernel]]

_SEED_MASK = (1 << 63) - 1


def derive_seed(seed: int, tag: str) -> int:
    """Stable per-term seed: ``seed`` xor a CRC of ``tag``."""
    return (int(seed) ^ zlib.crc32(tag.encode("utf-8"))) & _SEED_MASK


def _kernels(vars: VariableSet) -> list:
    ks = list(vars.values()) if isinstance(vars, Mapping) else list(vars)
    if not ks:
        raise InputError("variable set is empty")
    n = ks[0].shape[0]
    for k in ks:
        if k.shape != (n, n):
            raise SizeMismatch(f"kernel sizes differ: {k.shape} vs {(n, n)}")
    return ks


def joint_kernel(vars: VariableSet) -> NormalizedKernel:
    ks = _kernels(vars)
    if len(ks) == 1:
        k = ks[0]
        return k if isinstance(k, NormalizedKernel) else NormalizedKernel(k)
    return hadamard_joint(ks)


def joint_entropy(vars: VariableSet, params: EstimatorParams) -> EntropyEstimate:
    """``S_alpha`` of the normalized Hadamard product of the variables' kernels."""
    return estimate_entropy(joint_kernel(vars), params)


def conditional_entropy(vars: VariableSet, given: NormalizedKernel, params: EstimatorParams) -> float:
    """``S(vars, given) - S(given)``."""
    ks = _kernels(vars)
    joint = joint_kernel(ks + [given])
    s_joint = estimate_entropy(joint, params.with_seed(derive_seed(params.seed, "joint"))).entropy
    s_given = estimate_entropy(given, params.with_seed(derive_seed(params.seed, "target"))).entropy
    return s_joint - s_given


@dataclass(frozen=True)
class MutualInformation:
    value: float
    s_vars: EntropyEstimate
    s_target: EntropyEstimate
    s_joint: EntropyEstimate

    def __float__(self):
        return self.value


def mutual_information_terms(
    vars: VariableSet,
    target: NormalizedKernel,
    params: EstimatorParams,
    s_target: EntropyEstimate = None,
) -> MutualInformation:
    """Three-term form ``S(vars) + S(target) - S(vars, target)``.

    ``s_target`` may be passed in to reuse an estimate shared by many calls
    (feature ranking); it must have been computed with the ``"target"`` seed.
    """
    ks = _kernels(vars)
    if target.shape != ks[0].shape:
        raise SizeMismatch(f"target kernel {target.shape} does not match variables {ks[0].shape}")
    vk = joint_kernel(ks)
    s_vars = estimate_entropy(vk, params.with_seed(derive_seed(params.seed, "vars")))
    if s_target is None:
        s_target = estimate_entropy(target, params.with_seed(derive_seed(params.seed, "target")))
    s_joint = estimate_entropy(hadamard_joint([vk, target]), params.with_seed(derive_seed(params.seed, "joint")))
    value = s_vars.entropy + s_target.entropy - s_joint.entropy
    return MutualInformation(value, s_vars, s_target, s_joint)


def mutual_information(vars: VariableSet, target: NormalizedKernel, params: EstimatorParams) -> float:
    """``I_alpha(vars; target)``; may come out slightly negative for randomized methods."""
    return mutual_information_terms(vars, target, params).value
