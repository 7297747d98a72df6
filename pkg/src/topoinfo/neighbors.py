"""Distance kernels shared by every estimator.

Chebyshev is the working metric throughout: the k-th-neighbor search and the
marginal range counts both use it, and range counts use *strict* inequality
(count of points with distance < eps), the convention the joint-plus-marginal
estimators are derived under.

Two interchangeable backends exist: a vectorized brute-force scan (the
reference semantics) and a KD-tree (scipy cKDTree with the infinity norm).
They must agree exactly; the test suite enforces this.  Queries default to a
tiny seeded uniform jitter that breaks ties on degenerate clouds (exact
copies, zero-variance columns) without disturbing continuous data.
"""

from dataclasses import dataclass

import numpy as np
import scipy.special
from scipy.spatial import cKDTree
from scipy.spatial.distance import cdist

from . import _rng
from .cloud import as_point_cloud
from .errors import InvalidArgumentError

DEFAULT_K = 4
DEFAULT_JITTER = 1e-10

# Below this many points the tree's construction overhead beats its query
# savings; brute force is also the fallback reference implementation.
_TREE_MIN_POINTS = 64

_METRICS = ("chebyshev", "euclidean")


@dataclass(frozen=True)
class DistanceMatrix:
    """All pairwise distances of a cloud under a tagged metric."""

    entries: np.ndarray
    metric: str

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=np.float64)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise InvalidArgumentError(f"distance matrix must be square, got {e.shape}")
        if not np.isfinite(e).all():
            raise InvalidArgumentError("distance matrix entries must be finite")
        if (e < 0).any():
            raise InvalidArgumentError("distance matrix entries must be non-negative")
        if not np.array_equal(e, e.T):
            raise InvalidArgumentError("distance matrix must be symmetric")
        if np.diagonal(e).any():
            raise InvalidArgumentError("distance matrix diagonal must be zero")
        if self.metric not in _METRICS:
            raise InvalidArgumentError(f"metric must be one of {_METRICS}, got {self.metric!r}")
        e = e.copy()
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def save_csv(self, path) -> None:
        np.savetxt(path, self.entries, fmt="%.17g", delimiter=",")

    @classmethod
    def load_csv(cls, path, metric: str = "chebyshev") -> "DistanceMatrix":
        return cls(np.loadtxt(path, delimiter=",", ndmin=2), metric)


def chebyshev(a, b) -> float:
    """Max-coordinate distance between two vectors of equal length."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise InvalidArgumentError(f"expected equal-length vectors, got {a.shape} and {b.shape}")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def distance_matrix(cloud, metric: str = "chebyshev") -> DistanceMatrix:
    """Pairwise distances of a cloud under ``chebyshev`` or ``euclidean``."""
    pts = as_point_cloud(cloud)
    if pts.shape[0] < 2:
        raise InvalidArgumentError("distance matrix needs at least 2 points")
    if metric not in _METRICS:
        raise InvalidArgumentError(f"metric must be one of {_METRICS}, got {metric!r}")
    d = cdist(pts, pts, metric=metric)
    np.fill_diagonal(d, 0.0)
    d = np.maximum(d, d.T)  # exact symmetry regardless of summation order
    return DistanceMatrix(d, metric)


def apply_jitter(points, amplitude: float = DEFAULT_JITTER, seed: int = 0) -> np.ndarray:
    """Add seeded uniform noise in [0, amplitude) to every coordinate.

    Amplitude 0 returns the input unchanged.  The jitter stream depends only
    on (seed, shape), so every query against the same cloud sees the same
    perturbation.
    """
    pts = as_point_cloud(points)
    if amplitude < 0:
        raise InvalidArgumentError(f"jitter amplitude must be >= 0, got {amplitude}")
    if amplitude == 0:
        return pts
    g = _rng.stream(seed, _rng.JITTER)
    return as_point_cloud(pts + amplitude * g.random(pts.shape))


def digamma(x):
    """Digamma function, elementwise, restricted to positive arguments."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.size and (np.isnan(arr).any() or (arr <= 0).any()):
        raise InvalidArgumentError("digamma requires strictly positive arguments")
    out = scipy.special.digamma(arr)
    return float(out) if arr.ndim == 0 else out


def _chebyshev_row(points, t):
    return np.max(np.abs(points - points[t]), axis=1)


def kth_neighbor_distances(points, k: int, method: str = "auto") -> np.ndarray:
    """Chebyshev distance from every point to its k-th nearest neighbor.

    Self is excluded.  ``method`` is "auto", "brute", or "tree"; the two
    backends return identical values.
    """
    pts = as_point_cloud(points)
    n = pts.shape[0]
    k = int(k)
    if not 1 <= k <= n - 1:
        raise InvalidArgumentError(f"need 1 <= k <= n-1, got k={k} with n={n}")
    if method == "auto":
        method = "tree" if n >= _TREE_MIN_POINTS else "brute"
    if method == "tree":
        dists, _ = cKDTree(pts).query(pts, k=k + 1, p=np.inf)
        return dists[:, k]
    if method == "brute":
        out = np.empty(n)
        for t in range(n):
            row = _chebyshev_row(pts, t)
            row[t] = np.inf
            out[t] = np.partition(row, k - 1)[k - 1]
        return out
    raise InvalidArgumentError(f"unknown method {method!r}")


def strict_range_counts(points, radii, method: str = "auto") -> np.ndarray:
    """Count, per point t, the other points with Chebyshev distance < radii[t].

    Strict inequality; the point itself is excluded.  ``radii`` may be a
    scalar or one value per point.
    """
    pts = as_point_cloud(points)
    n = pts.shape[0]
    radii = np.broadcast_to(np.asarray(radii, dtype=np.float64), (n,))
    if (radii <= 0).any():
        raise InvalidArgumentError("range-count radii must be positive")
    if method == "auto":
        method = "tree" if n >= _TREE_MIN_POINTS else "brute"
    if method == "tree":
        # d < r is exactly d <= pred(r) in float64, so the closed-ball tree
        # query reproduces the strict brute-force count bit for bit.
        closed = cKDTree(pts).query_ball_point(
            pts, np.nextafter(radii, -np.inf), p=np.inf, return_length=True
        )
        return np.asarray(closed, dtype=np.int64) - 1
    if method == "brute":
        out = np.empty(n, dtype=np.int64)
        for t in range(n):
            out[t] = int(np.count_nonzero(_chebyshev_row(pts, t) < radii[t])) - 1
        return out
    raise InvalidArgumentError(f"unknown method {method!r}")


def kth_neighbor_distance(
    cloud,
    t: int,
    k: int,
    *,
    jitter: float = DEFAULT_JITTER,
    jitter_seed: int = 0,
) -> float:
    """Distance from point t to its k-th nearest neighbor (Chebyshev).

    Applies the default tie-breaking jitter to the whole cloud first, so
    results are consistent with :func:`marginal_range_count` at equal seeds.
    """
    pts = apply_jitter(cloud, jitter, jitter_seed)
    n = pts.shape[0]
    t = int(t)
    if not 0 <= t < n:
        raise InvalidArgumentError(f"point index {t} out of range for n={n}")
    k = int(k)
    if not 1 <= k <= n - 1:
        raise InvalidArgumentError(f"need 1 <= k <= n-1, got k={k} with n={n}")
    row = _chebyshev_row(pts, t)
    row[t] = np.inf
    return float(np.partition(row, k - 1)[k - 1])


def marginal_range_count(
    cloud,
    dims,
    t: int,
    eps: float,
    *,
    jitter: float = DEFAULT_JITTER,
    jitter_seed: int = 0,
) -> int:
    """Points within strict Chebyshev distance eps of point t on ``dims``.

    ``dims`` selects the coordinate subset of the marginal space; the point
    itself is excluded from the count.
    """
    pts = apply_jitter(cloud, jitter, jitter_seed)
    n, d = pts.shape
    t = int(t)
    if not 0 <= t < n:
        raise InvalidArgumentError(f"point index {t} out of range for n={n}")
    dims = np.atleast_1d(np.asarray(dims, dtype=np.int64))
    if dims.size == 0:
        raise InvalidArgumentError("dims must be a nonempty subset of columns")
    if dims.min() < 0 or dims.max() >= d or len(set(dims.tolist())) != dims.size:
        raise InvalidArgumentError(f"dims must be distinct columns in [0, {d}), got {dims}")
    if not eps > 0:
        raise InvalidArgumentError(f"eps must be positive, got {eps}")
    sub = pts[:, dims]
    row = np.max(np.abs(sub - sub[t]), axis=1)
    return int(np.count_nonzero(row < eps)) - 1
