"""Independent closed-form and brute-force oracles used across the suite.

Everything here is deliberately written against the definitions rather than
the library's code paths: Gaussian entropies from log-determinants,
digamma from a slowly-converging series, discrete measures by summation
over a dense joint array.
"""

import math
from itertools import product

import numpy as np

LOG_2PI_E = math.log(2.0 * math.pi * math.e)


def euler_mascheroni(n_terms: int = 2_000_000) -> float:
    """gamma = lim (sum 1/k - ln(n + 1/2)); error is O(1/n^2)."""
    harmonic = math.fsum(1.0 / k for k in range(1, n_terms + 1))
    return harmonic - math.log(n_terms + 0.5)


def gaussian_entropy(cov: np.ndarray) -> float:
    """Differential entropy of a multivariate normal, nats."""
    cov = np.atleast_2d(cov)
    d = cov.shape[0]
    sign, logdet = np.linalg.slogdet(cov)
    assert sign > 0
    return 0.5 * (d * LOG_2PI_E + logdet)


def gaussian_tc_dtc(cov: np.ndarray) -> tuple[float, float]:
    """Closed-form total and dual total correlation of a Gaussian, nats."""
    cov = np.asarray(cov, dtype=float)
    d = cov.shape[0]
    h_joint = gaussian_entropy(cov)
    h_single = [gaussian_entropy(cov[i : i + 1, i : i + 1]) for i in range(d)]
    idx = np.arange(d)
    h_comp = [
        gaussian_entropy(cov[np.ix_(idx != i, idx != i)]) for i in range(d)
    ]
    tc = math.fsum(h_single) - h_joint
    dtc = (1 - d) * h_joint + math.fsum(h_comp)
    return tc, dtc


def random_correlation_matrix(rng: np.random.Generator, d: int = 3) -> np.ndarray:
    """Random well-conditioned correlation matrix."""
    a = rng.standard_normal((d, d + 2))
    cov = a @ a.T + 0.5 * np.eye(d)
    scale = np.sqrt(np.diag(cov))
    return cov / np.outer(scale, scale)


def dense_joint(states, arity_values) -> np.ndarray:
    """Joint probability array over a full grid of discrete values."""
    shape = tuple(len(v) for v in arity_values)
    table = np.zeros(shape)
    lookup = [
        {val: pos for pos, val in enumerate(axis_vals)} for axis_vals in arity_values
    ]
    for values, p in states:
        table[tuple(lookup[i][v] for i, v in enumerate(values))] += p
    return table


def dense_entropy(table: np.ndarray, axes, base: float) -> float:
    marg = table.sum(axis=tuple(i for i in range(table.ndim) if i not in axes))
    flat = marg.ravel()
    return -math.fsum(p * math.log(p, base) for p in flat if p > 0)


def dense_tc_dtc(table: np.ndarray, base: float = 2.0) -> tuple[float, float]:
    """TC and DTC directly from the definitions on a dense joint array."""
    d = table.ndim
    h_joint = dense_entropy(table, tuple(range(d)), base)
    tc = math.fsum(dense_entropy(table, (i,), base) for i in range(d)) - h_joint
    dtc = (1 - d) * h_joint + math.fsum(
        dense_entropy(table, tuple(j for j in range(d) if j != i), base)
        for i in range(d)
    )
    return tc, dtc


def random_discrete_states(rng: np.random.Generator, arity: int = 3, levels: int = 2):
    """Random distribution over the full {0..levels-1}^arity grid."""
    support = list(product(range(levels), repeat=arity))
    masses = rng.random(len(support))
    masses /= masses.sum()
    # renormalize exactly in fsum terms to keep the library's 1e-12 gate happy
    masses[-1] = 1.0 - math.fsum(masses[:-1])
    return tuple((tuple(v), float(p)) for v, p in zip(support, masses))
