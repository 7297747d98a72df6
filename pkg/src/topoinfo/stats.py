"""Circular-shift null models, triad significance, and rank correlation.

The null model rotates each channel of a triad in time, preserving every
channel's autocorrelation while destroying cross-channel alignment, then
re-estimates the O-information.  A triad whose empirical O-information sits
more than three standard deviations above the null mean is called redundant,
more than three below synergistic.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.stats

from . import _rng
from .errors import DegenerateInputError, InvalidArgumentError
from .info import knn_oinformation
from .neighbors import DEFAULT_JITTER, DEFAULT_K

Z_THRESHOLD = 3.0

# When a series has no segment structure to shift across, offsets are drawn
# at least this fraction of the length away from zero (both ends).
MIN_OFFSET_FRACTION = 0.1


@dataclass(frozen=True)
class MultiSeries:
    """A (time x channels) array plus the segment starts of concatenation.

    ``segment_boundaries`` holds the start index of every segment (so a
    single recording is just (0,)); shifts that relocate a channel's origin
    into a different segment emulate "recorded in a different scan".
    """

    series: np.ndarray
    segment_boundaries: tuple = (0,)

    def __post_init__(self):
        arr = np.asarray(self.series, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 2 or arr.shape[1] < 1:
            raise InvalidArgumentError(f"series must be (time, channels), got {arr.shape}")
        if not np.isfinite(arr).all():
            raise InvalidArgumentError("series values must be finite")
        bounds = tuple(int(b) for b in self.segment_boundaries)
        if bounds != tuple(sorted(set(bounds))) or not bounds:
            raise InvalidArgumentError("segment boundaries must be strictly increasing")
        if bounds[0] != 0:
            raise InvalidArgumentError("first segment must start at index 0")
        if bounds[-1] >= arr.shape[0]:
            raise InvalidArgumentError("segment boundary beyond series length")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "series", arr)
        object.__setattr__(self, "segment_boundaries", bounds)

    @property
    def n_time(self) -> int:
        return self.series.shape[0]

    @property
    def n_channels(self) -> int:
        return self.series.shape[1]

    def segment_of(self, t: int) -> int:
        return int(np.searchsorted(self.segment_boundaries, t, side="right") - 1)


@dataclass(frozen=True)
class NullEnsemble:
    """Null O-information draws with their mean and standard deviation."""

    values: tuple
    mean: float
    sd: float

    @classmethod
    def from_values(cls, values) -> "NullEnsemble":
        vals = tuple(float(v) for v in values)
        if not vals:
            raise InvalidArgumentError("ensemble needs at least one value")
        mean = float(np.mean(vals))
        sd = float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0
        return cls(values=vals, mean=mean, sd=sd)

    def merged_with(self, other: "NullEnsemble") -> "NullEnsemble":
        """Pooled ensemble; supports the pooled-null testing mode."""
        return NullEnsemble.from_values(self.values + other.values)


@dataclass(frozen=True)
class SignificanceResult:
    empirical_o: float
    z: float
    label: str  # redundant | synergistic | nonsignificant

    def to_dict(self) -> dict:
        return {"o": self.empirical_o, "z": self.z, "label": self.label}


@dataclass(frozen=True)
class CorrelationResult:
    """Spearman rank correlation with a t-approximation p-value.

    ``p_underflow`` flags p-values below float precision, reported as 0.
    """

    rho: float
    p_value: float
    n: int
    p_underflow: bool = False

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "p_value": self.p_value,
            "n": self.n,
            "p_underflow": self.p_underflow,
        }


def circular_shift(channel, offset: int) -> np.ndarray:
    """Rotate a vector by ``offset`` (mod its length); values are preserved."""
    arr = np.asarray(channel, dtype=np.float64)
    if arr.ndim != 1:
        raise InvalidArgumentError(f"channel must be 1-D, got shape {arr.shape}")
    if arr.size == 0:
        return arr.copy()
    return np.roll(arr, int(offset) % arr.size)


def _valid_offsets(ms: MultiSeries, segment_crossing: bool | None) -> np.ndarray:
    """Offsets that relocate a channel's origin appropriately."""
    n = ms.n_time
    n_segments = len(ms.segment_boundaries)
    if segment_crossing is None:
        segment_crossing = n_segments >= 2
    if segment_crossing:
        if n_segments < 2:
            raise InvalidArgumentError(
                "segment-crossing shifts need at least 2 segments; "
                "pass segment_crossing=False for single-segment data"
            )
        offsets = np.array(
            [o for o in range(1, n) if ms.segment_of(o) != 0], dtype=np.int64
        )
    else:
        lo = max(1, int(math.ceil(MIN_OFFSET_FRACTION * n)))
        offsets = np.arange(lo, n - lo + 1, dtype=np.int64)
    if offsets.size == 0:
        raise InvalidArgumentError("no valid circular-shift offsets for this series")
    return offsets


def null_ensemble(
    ms: MultiSeries,
    triad,
    k: int = DEFAULT_K,
    draws: int = 1000,
    seed: int = 0,
    *,
    segment_crossing: bool | None = None,
    jitter: float = DEFAULT_JITTER,
) -> NullEnsemble:
    """Null O-information distribution for one triad of channels.

    Each draw circular-shifts the three channels by independent random
    offsets (crossing a segment boundary when the series has segments) and
    re-estimates the O-information on the shifted triple.
    """
    draws = int(draws)
    if draws < 1:
        raise InvalidArgumentError(f"draws must be >= 1, got {draws}")
    triad = tuple(int(c) for c in triad)
    if len(triad) != 3 or len(set(triad)) != 3:
        raise InvalidArgumentError(f"triad must be 3 distinct channels, got {triad}")
    if max(triad) >= ms.n_channels or min(triad) < 0:
        raise InvalidArgumentError(f"triad {triad} out of range for {ms.n_channels} channels")
    offsets = _valid_offsets(ms, segment_crossing)
    g = _rng.stream(seed, _rng.NULL_SHIFT)
    cols = [ms.series[:, c] for c in triad]
    values = np.empty(draws)
    for i in range(draws):
        chosen = g.choice(offsets, size=3, replace=True)
        shifted = np.column_stack(
            [circular_shift(col, off) for col, off in zip(cols, chosen)]
        )
        values[i] = knn_oinformation(
            shifted, k, jitter=jitter, jitter_seed=seed * 100003 + i
        )
    return NullEnsemble.from_values(values)


def classify_triad(empirical: float, ensemble: NullEnsemble) -> SignificanceResult:
    """Three-standard-deviation rule against the null ensemble.

    Above +3 SD the triad is redundant, below -3 SD synergistic, otherwise
    nonsignificant.
    """
    if not ensemble.sd > 0:
        raise DegenerateInputError("null ensemble has zero spread; cannot standardize")
    z = (float(empirical) - ensemble.mean) / ensemble.sd
    if z > Z_THRESHOLD:
        label = "redundant"
    elif z < -Z_THRESHOLD:
        label = "synergistic"
    else:
        label = "nonsignificant"
    return SignificanceResult(empirical_o=float(empirical), z=float(z), label=label)


def spearman(x, y) -> CorrelationResult:
    """Spearman rank correlation: Pearson on mid-ranks, ties averaged.

    The p-value uses the t-distribution approximation with n - 2 degrees of
    freedom; values below float precision come back as 0 with the underflow
    flag set.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.size != y.size:
        raise InvalidArgumentError("spearman expects two equal-length 1-D vectors")
    n = x.size
    if n < 3:
        raise InvalidArgumentError(f"spearman needs at least 3 observations, got {n}")
    if not (np.isfinite(x).all() and np.isfinite(y).all()):
        raise InvalidArgumentError("spearman inputs must be finite")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise DegenerateInputError("constant input vector: rank correlation undefined")
    rx = scipy.stats.rankdata(x)
    ry = scipy.stats.rankdata(y)
    if np.array_equal(rx, ry):
        rho = 1.0
    elif np.array_equal(rx + ry, np.full(n, n + 1.0)):
        rho = -1.0
    else:
        rho = float(np.corrcoef(rx, ry)[0, 1])
        rho = max(-1.0, min(1.0, rho))
    if abs(rho) == 1.0:
        p = 0.0
    else:
        t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
        p = 2.0 * float(scipy.stats.t.sf(abs(t), n - 2))
    underflow = p == 0.0
    return CorrelationResult(rho=rho, p_value=p, n=n, p_underflow=underflow)
