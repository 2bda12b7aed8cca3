"""Independent reference computations used as test oracles."""

import math

import numpy as np


def falling(x, k):
    out = 1.0
    for j in range(k):
        out *= x - j
    return out


def chebyshev_closed_form(alpha, m, v):
    """Coefficients of lambda**alpha on [0, v] from the analytic expression.

    ``c_k = 2 v^a Gamma(a + 1/2) (a)_k / (sqrt(pi) Gamma(a + 1) (a + k)_k)``
    with ``(x)_k`` the falling factorial.
    """
    lead = 2.0 * v**alpha * math.exp(math.lgamma(alpha + 0.5) - math.lgamma(alpha + 1.0)) / math.sqrt(math.pi)
    return np.array([lead * falling(alpha, k) / falling(alpha + k, k) for k in range(m + 1)])


def chebyshev_projection(alpha, m, u, v, nodes=200_000):
    """Chebyshev coefficients from a heavily oversampled node sum (no aliasing at this m)."""
    theta = np.pi * (np.arange(nodes) + 0.5) / nodes
    lam = np.maximum(0.5 * (v - u) * np.cos(theta) + 0.5 * (v + u), 0.0)
    f = lam**alpha
    return np.array([2.0 / nodes * np.dot(f, np.cos(k * theta)) for k in range(m + 1)])


def exact_trace_power(A, alpha):
    lam = np.clip(np.linalg.eigvalsh(np.asarray(A)), 0.0, None)
    return float(np.sum(lam**alpha))


def exact_entropy(A, alpha):
    return math.log(exact_trace_power(A, alpha)) / (1.0 - alpha)
