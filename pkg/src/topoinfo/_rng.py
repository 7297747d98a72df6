"""Seeded random streams.

All randomness in the package derives from numpy's counter-based Philox
generator.  Every randomized operation owns a stream id, so that two
operations called with the same user seed (say, sampling a sphere and then
subsampling it) never consume from the same stream.
"""

import numpy as np

# Stream ids, one per randomized operation.  Appending is fine; reordering
# would silently change every seeded result.
LINE = 1
PLANE = 2
SPHERE = 3
BALL = 4
TORUS = 5
TORUS_KNOT = 6
SUBSAMPLE = 7
JITTER = 8
NULL_SHIFT = 9
TRIAD_SAMPLE = 10


def stream(seed: int, op: int) -> np.random.Generator:
    """Independent generator for the (seed, operation) pair."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((int(seed), int(op)))))
