"""Vietoris-Rips persistent homology from a distance matrix, dimensions 0-2.

Homology is computed over the two-element field.  The default filtration
threshold is the enclosing radius (the smallest radius at which one point
sees every other), beyond which the complex is a cone and nothing new can
happen; with that threshold every class in dimensions 1 and 2 dies and
exactly one dimension-0 class survives as essential.

Zero-persistence pairs are suppressed from diagrams.  Ties in the filtration
are broken by a fixed simplex order, so diagrams are deterministic.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from . import _rng
from ._reduction import rips_pairs
from .cloud import as_point_cloud
from .errors import InvalidArgumentError
from .neighbors import DistanceMatrix


@dataclass(frozen=True)
class FiltrationSpec:
    """Settings for one Rips run.

    ``threshold`` None means "use the enclosing radius of the input".
    ``subsample_cap`` is carried along for pipelines that subsample clouds
    before building the matrix; the reduction itself never reads it.
    """

    max_homology_dim: int = 2
    threshold: float | None = None
    subsample_cap: int = 512

    def __post_init__(self):
        if self.max_homology_dim not in (0, 1, 2):
            raise InvalidArgumentError(
                f"max_homology_dim must be 0, 1 or 2, got {self.max_homology_dim}"
            )
        if self.threshold is not None and not self.threshold > 0:
            raise InvalidArgumentError(f"threshold must be positive, got {self.threshold}")
        if self.subsample_cap < 2:
            raise InvalidArgumentError(f"subsample_cap must be >= 2, got {self.subsample_cap}")


@dataclass(frozen=True)
class PersistencePair:
    """One homology class: born at ``birth``, filled in at ``death``.

    ``death`` is math.inf for essential classes (alive at the threshold).
    """

    dim: int
    birth: float
    death: float

    @property
    def essential(self) -> bool:
        return math.isinf(self.death)

    @property
    def persistence(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True)
class PersistenceDiagram:
    pairs: tuple
    metric: str
    threshold: float
    spec: FiltrationSpec

    def in_dim(self, dim: int) -> tuple:
        return tuple(p for p in self.pairs if p.dim == dim)

    def to_dict(self) -> dict:
        return {
            "dims": sorted({p.dim for p in self.pairs}),
            "pairs": [
                [p.dim, p.birth, None if p.essential else p.death] for p in self.pairs
            ],
            "threshold": self.threshold,
            "metric": self.metric,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class PersistenceSummary:
    """Count and size statistics of the finite classes in one dimension."""

    dim: int
    count: int
    avg_persistence: float
    max_persistence: float
    essential_count: int = 0

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "count": self.count,
            "avg_persistence": self.avg_persistence,
            "max_persistence": self.max_persistence,
            "essential_count": self.essential_count,
        }


def enclosing_radius(dmat) -> float:
    """min over points of the max distance to all others."""
    entries = dmat.entries if isinstance(dmat, DistanceMatrix) else np.asarray(dmat)
    return float(entries.max(axis=1).min())


def rips_persistence(dmat: DistanceMatrix, spec: FiltrationSpec | None = None) -> PersistenceDiagram:
    """Persistence diagram of the Rips filtration over a distance matrix.

    Simplices up to dimension max_homology_dim + 1 enter the filtration at
    their diameter, capped at the threshold.  Finite pairs satisfy
    birth < death <= threshold; essential classes get death = inf.
    """
    if not isinstance(dmat, DistanceMatrix):
        dmat = DistanceMatrix(np.asarray(dmat, dtype=np.float64), "chebyshev")
    if dmat.n < 2:
        raise InvalidArgumentError("rips_persistence needs at least 2 points")
    spec = spec or FiltrationSpec()
    threshold = spec.threshold if spec.threshold is not None else enclosing_radius(dmat)
    if not threshold > 0:
        raise InvalidArgumentError(
            "threshold is zero (all points coincide); nothing to filter"
        )
    rows = rips_pairs(dmat.entries, threshold, spec.max_homology_dim)
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    pairs = tuple(PersistencePair(int(d), float(b), float(x)) for d, b, x in rows)
    return PersistenceDiagram(pairs=pairs, metric=dmat.metric, threshold=float(threshold), spec=spec)


def persistence_summary(diagram: PersistenceDiagram, dim: int) -> PersistenceSummary:
    """Count / average / max persistence of the finite classes at ``dim``.

    Essential classes are excluded from the statistics and reported in
    ``essential_count``.  An empty dimension yields zeros.
    """
    if dim > diagram.spec.max_homology_dim:
        raise InvalidArgumentError(
            f"dim {dim} exceeds the diagram's max homology dim "
            f"{diagram.spec.max_homology_dim}"
        )
    finite = [p.persistence for p in diagram.in_dim(dim) if not p.essential]
    essential = sum(1 for p in diagram.in_dim(dim) if p.essential)
    return PersistenceSummary(
        dim=dim,
        count=len(finite),
        avg_persistence=float(np.mean(finite)) if finite else 0.0,
        max_persistence=float(np.max(finite)) if finite else 0.0,
        essential_count=essential,
    )


def subsample(cloud, cap: int, seed: int = 0) -> np.ndarray:
    """Uniform random subset of rows, without replacement, size min(cap, n).

    A cap at or above n returns the input unchanged (same order).
    """
    pts = as_point_cloud(cloud)
    cap = int(cap)
    if cap < 2:
        raise InvalidArgumentError(f"subsample cap must be >= 2, got {cap}")
    n = pts.shape[0]
    if cap >= n:
        return pts
    keep = _rng.stream(seed, _rng.SUBSAMPLE).choice(n, size=cap, replace=False)
    return as_point_cloud(pts[keep])
