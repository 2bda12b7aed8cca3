"""Randomized estimation of matrix-based Renyi alpha-entropy.

The entropy of a normalized kernel matrix ``A`` is
``S_alpha(A) = log(tr(A^alpha)) / (1 - alpha)``.  Instead of an
eigendecomposition, ``tr(A^alpha)`` is estimated with Hutch++ applied to a
polynomial approximation of ``A^alpha`` (exact powers for integer orders,
Taylor or Chebyshev series otherwise).
"""

__version__ = "0.1.0"

from .errors import (
    AlphaIsOne,
    DegenerateBounds,
    DomainError,
    InputError,
    NonFinite,
    NonPositiveTrace,
    NumericalError,
    ParseError,
    RankCollapse,
    RenyiError,
    SizeMismatch,
    ZeroDiagonal,
)
from .kernels import (
    GaussianKernel,
    NormalizedKernel,
    PolynomialKernel,
    build_kernel,
    constant_kernel,
    hadamard_joint,
    parse_kernel_spec,
)
from .spectrum import SpectrumBounds, estimate_bounds, estimate_u, estimate_v
from .polyapprox import (
    ChebyshevPower,
    IntPower,
    TaylorPower,
    binomial_coeffs,
    chebyshev_coeffs,
)
from .hutchpp import SketchConfig, TraceEstimate, hutchpp
from .entropy import (
    EntropyEstimate,
    EstimatorParams,
    Method,
    MuBound,
    entropy_chebyshev,
    entropy_exact,
    entropy_int,
    entropy_taylor,
    estimate_entropy,
    mu_bound,
    select_params,
)
from .measures import (
    MutualInformation,
    conditional_entropy,
    joint_entropy,
    mutual_information,
    mutual_information_terms,
)
from .features import Dataset, RankingResult, SelectionResult, rank_features, select_features
from .data import load_csv
from .simulate import MreReport, SimulationSpec, run_simulation
