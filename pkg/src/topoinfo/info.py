"""Higher-order information measures: k-NN estimators and exact discrete forms.

The continuous estimators all share one scheme: a single Chebyshev
k-th-neighbor search in the joint space fixes a radius eps(t) per sample,
marginal range counts at that radius feed digamma terms, and each measure is
a signed combination of those terms.  Using one joint search (rather than
separate entropy estimates per marginal) keeps the neighbor-scale consistent
across spaces, which is what makes the combination low-bias.

With F(m) = psi(m) - psi(n), counts taken strictly inside eps(t), and
k_i(t) / k_{-i}(t) the count-plus-one values for the i-th single-column
marginal and its complement:

    TC  = F(k) - < sum_i F(k_i(t)) >_t
    DTC = (d-1) F(k) - < sum_i F(k_{-i}(t)) >_t
    O   = TC - DTC,   S = TC + DTC

which for d = 2 reduce, identically, to the classic k-NN mutual-information
estimator F(k) - <F(n_x+1) + F(n_y+1)>.  Continuous results are in nats.

Discrete distributions get exact counterparts by direct summation, used as
oracles for the continuous machinery and for logic-gate style examples.
"""

import json
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .cloud import as_point_cloud
from .errors import DegenerateInputError, InvalidArgumentError
from .neighbors import (
    DEFAULT_JITTER,
    DEFAULT_K,
    apply_jitter,
    digamma,
    kth_neighbor_distances,
    strict_range_counts,
)

# Count conventions for the marginal terms.  "add-one" feeds psi(count + 1),
# the convention the estimator family is derived under and the one validated
# by the Gaussian closed-form oracle; "raw" feeds psi(max(count, 1)) and is
# kept only for sensitivity checks.
_CONVENTIONS = ("add-one", "raw")


@dataclass(frozen=True)
class InfoSummary:
    """TC, DTC, O and S for one input, with the settings that produced them.

    ``o_norm`` is O/S when S > 0 and None (undefined, never clamped)
    otherwise.  ``k`` and ``jitter_seed`` are None for discrete inputs.
    """

    tc: float
    dtc: float
    o: float
    s: float
    o_norm: float | None
    k: int | None
    n: int
    units: str
    jitter_seed: int | None

    def to_dict(self) -> dict:
        return {
            "tc": self.tc,
            "dtc": self.dtc,
            "o": self.o,
            "s": self.s,
            "o_norm": self.o_norm,
            "k": self.k,
            "n": self.n,
            "units": self.units,
            "jitter_seed": self.jitter_seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _f_terms(counts, n: int, convention: str) -> np.ndarray:
    """F(m) = psi(m) - psi(n) applied to marginal neighbor counts."""
    if convention == "add-one":
        m = counts + 1
    else:
        m = np.maximum(counts, 1)
    return digamma(m) - digamma(n)


def _prepare(points, k, jitter, jitter_seed, min_dim, convention):
    if convention not in _CONVENTIONS:
        raise InvalidArgumentError(f"convention must be one of {_CONVENTIONS}, got {convention!r}")
    pts = as_point_cloud(points)
    n, d = pts.shape
    if d < min_dim:
        raise InvalidArgumentError(f"need at least {min_dim} columns, got {d}")
    k = int(k)
    if not 1 <= k <= n - 1:
        raise InvalidArgumentError(f"need 1 <= k <= n-1, got k={k} with n={n}")
    pts = apply_jitter(pts, jitter, jitter_seed)
    return pts, n, d, k


def _joint_radii(pts, k, method):
    eps = kth_neighbor_distances(pts, k, method=method)
    if (eps <= 0).any():
        raise DegenerateInputError(
            "duplicate points give a zero neighbor distance; enable jitter to break ties"
        )
    return eps


def _marginal_f_means(pts, eps, convention, method):
    """Mean F value per single-column marginal and per complement marginal."""
    n, d = pts.shape
    f_single = np.empty(d)
    f_comp = np.empty(d)
    for i in range(d):
        cnt = strict_range_counts(pts[:, [i]], eps, method=method)
        f_single[i] = _f_terms(cnt, n, convention).mean()
        rest = [j for j in range(d) if j != i]
        cnt = strict_range_counts(pts[:, rest], eps, method=method)
        f_comp[i] = _f_terms(cnt, n, convention).mean()
    return f_single, f_comp


def _tc_dtc(points, k, jitter, jitter_seed, min_dim, convention, method):
    pts, n, d, k = _prepare(points, k, jitter, jitter_seed, min_dim, convention)
    eps = _joint_radii(pts, k, method)
    f_single, f_comp = _marginal_f_means(pts, eps, convention, method)
    f_k = digamma(k) - digamma(n)
    tc = f_k - f_single.sum()
    dtc = (d - 1) * f_k - f_comp.sum()
    return tc, dtc, n, d


def kl_entropy(
    points,
    k: int = DEFAULT_K,
    *,
    jitter: float = DEFAULT_JITTER,
    jitter_seed: int = 0,
    method: str = "auto",
) -> float:
    """Differential entropy in nats from k-th-neighbor Chebyshev distances.

    H = psi(n) - psi(k) + d * <ln(2 eps(t))>.
    """
    pts, n, d, k = _prepare(points, k, jitter, jitter_seed, 1, "add-one")
    eps = _joint_radii(pts, k, method)
    return digamma(n) - digamma(k) + d * float(np.mean(np.log(2.0 * eps)))


def ksg_mutual_information(
    points,
    split,
    k: int = DEFAULT_K,
    *,
    jitter: float = DEFAULT_JITTER,
    jitter_seed: int = 0,
    convention: str = "add-one",
    method: str = "auto",
) -> float:
    """Mutual information (nats) between two blocks of columns.

    ``split`` is a pair of disjoint, exhaustive column-index collections.
    One joint neighbor search; counts within eps(t) on each block.
    """
    pts, n, d, k = _prepare(points, k, jitter, jitter_seed, 2, convention)
    if len(split) != 2:
        raise InvalidArgumentError("split must contain exactly two blocks")
    blocks = [np.atleast_1d(np.asarray(b, dtype=np.int64)) for b in split]
    if any(b.size == 0 for b in blocks):
        raise InvalidArgumentError("both blocks of the split must be nonempty")
    flat = sorted(int(i) for b in blocks for i in b)
    if flat != list(range(d)):
        raise InvalidArgumentError(f"split must partition the {d} columns, got {split}")
    eps = _joint_radii(pts, k, method)
    total = digamma(k) - digamma(n)
    for b in blocks:
        cnt = strict_range_counts(pts[:, b], eps, method=method)
        total -= _f_terms(cnt, n, convention).mean()
    return float(total)


def knn_total_correlation(
    points,
    k: int = DEFAULT_K,
    *,
    jitter: float = DEFAULT_JITTER,
    jitter_seed: int = 0,
    convention: str = "add-one",
    method: str = "auto",
) -> float:
    """Total correlation (nats): deviation of the joint from independence."""
    tc, _, _, _ = _tc_dtc(points, k, jitter, jitter_seed, 2, convention, method)
    return float(tc)


def knn_dual_total_correlation(
    points,
    k: int = DEFAULT_K,
    *,
    jitter: float = DEFAULT_JITTER,
    jitter_seed: int = 0,
    convention: str = "add-one",
    method: str = "auto",
) -> float:
    """Dual total correlation (nats): information shared by two or more columns."""
    _, dtc, _, _ = _tc_dtc(points, k, jitter, jitter_seed, 2, convention, method)
    return float(dtc)


def knn_oinformation(
    points,
    k: int = DEFAULT_K,
    *,
    jitter: float = DEFAULT_JITTER,
    jitter_seed: int = 0,
    convention: str = "add-one",
    method: str = "auto",
) -> float:
    """O-information (nats): TC - DTC from one shared set of searches.

    Positive values are redundancy-dominated, negative synergy-dominated.
    Requires at least 3 columns.
    """
    tc, dtc, _, _ = _tc_dtc(points, k, jitter, jitter_seed, 3, convention, method)
    return float(tc - dtc)


def info_summary(
    points,
    k: int = DEFAULT_K,
    *,
    jitter: float = DEFAULT_JITTER,
    jitter_seed: int = 0,
    convention: str = "add-one",
    method: str = "auto",
) -> InfoSummary:
    """TC, DTC, O = TC-DTC and S = TC+DTC from one shared set of searches."""
    tc, dtc, n, _ = _tc_dtc(points, k, jitter, jitter_seed, 3, convention, method)
    tc, dtc = float(tc), float(dtc)
    s = tc + dtc
    return InfoSummary(
        tc=tc,
        dtc=dtc,
        o=tc - dtc,
        s=s,
        o_norm=(tc - dtc) / s if s > 0 else None,
        k=int(k),
        n=n,
        units="nats",
        jitter_seed=int(jitter_seed),
    )


@dataclass(frozen=True)
class DiscreteDistribution:
    """Explicit finite joint distribution over tuples of equal arity."""

    states: tuple

    def __post_init__(self):
        states = tuple((tuple(v), float(p)) for v, p in self.states)
        if not states:
            raise InvalidArgumentError("distribution needs at least one state")
        arity = len(states[0][0])
        if arity < 1 or any(len(v) != arity for v, _ in states):
            raise InvalidArgumentError("all state tuples must share a positive arity")
        if any(p < 0 for _, p in states):
            raise InvalidArgumentError("probability masses must be non-negative")
        if abs(math.fsum(p for _, p in states) - 1.0) > 1e-12:
            raise InvalidArgumentError("probability masses must sum to 1")
        merged: dict = {}
        for v, p in states:
            merged[v] = merged.get(v, 0.0) + p
        object.__setattr__(self, "states", tuple(sorted(merged.items())))

    @property
    def arity(self) -> int:
        return len(self.states[0][0])

    def marginal_entropy(self, dims, base: float = 2.0) -> float:
        """Shannon entropy of the projection onto ``dims``."""
        dims = tuple(dims)
        if not dims:
            raise InvalidArgumentError("dims must be nonempty")
        masses: dict = {}
        for v, p in self.states:
            key = tuple(v[i] for i in dims)
            masses[key] = masses.get(key, 0.0) + p
        return -math.fsum(p * math.log(p, base) for p in masses.values() if p > 0)

    def entropy(self, base: float = 2.0) -> float:
        return self.marginal_entropy(range(self.arity), base)


def _check_base(base) -> float:
    base = float(base)
    if base not in (2.0, math.e):
        raise InvalidArgumentError("base must be 2 (bits) or e (nats)")
    return base


def discrete_mutual_information(dist: DiscreteDistribution, left, right, base: float = 2.0) -> float:
    """Exact mutual information between two disjoint groups of variables."""
    base = _check_base(base)
    left, right = tuple(left), tuple(right)
    if not left or not right or set(left) & set(right):
        raise InvalidArgumentError("left and right must be nonempty and disjoint")
    return (
        dist.marginal_entropy(left, base)
        + dist.marginal_entropy(right, base)
        - dist.marginal_entropy(left + right, base)
    )


def discrete_summary(dist: DiscreteDistribution, base: float = 2.0) -> InfoSummary:
    """Exact TC, DTC, O and S by direct summation over the support."""
    base = _check_base(base)
    d = dist.arity
    h_joint = dist.entropy(base)
    h_single = [dist.marginal_entropy([i], base) for i in range(d)]
    h_comp = [dist.marginal_entropy([j for j in range(d) if j != i], base) for i in range(d)]
    tc = math.fsum(h_single) - h_joint
    # DTC = H - sum_i H(X_i | rest), with H(X_i | rest) = H - H(complement).
    dtc = (1 - d) * h_joint + math.fsum(h_comp)
    s = tc + dtc
    return InfoSummary(
        tc=tc,
        dtc=dtc,
        o=tc - dtc,
        s=s,
        o_norm=(tc - dtc) / s if s > 0 else None,
        k=None,
        n=len(dist.states),
        units="bits" if base == 2.0 else "nats",
        jitter_seed=None,
    )


def xor_distribution() -> DiscreteDistribution:
    """The stochastic exclusive-OR gate: four equiprobable states.

    Pairwise independent, yet any two variables jointly determine the third;
    the canonical purely synergistic system.
    """
    return DiscreteDistribution(
        states=(
            ((0, 0, 0), 0.25),
            ((0, 1, 1), 0.25),
            ((1, 0, 1), 0.25),
            ((1, 1, 0), 0.25),
        )
    )


def pairwise_mutual_informations(dist: DiscreteDistribution, base: float = 2.0) -> dict:
    """Exact MI for every unordered pair of variables."""
    return {
        (i, j): discrete_mutual_information(dist, [i], [j], base)
        for i, j in combinations(range(dist.arity), 2)
    }
