"""Reproducible random streams keyed by (seed, *indices).

Every stochastic routine in the package draws from a stream created here, so
a run is fully determined by its seed plus the integer indices of the work
item (sweep point, axis, restart, ...). Streams for distinct keys are
statistically independent, which makes parallel evaluation order-independent.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def stream(seed: int, *key: int) -> np.random.Generator:
    """Return a counter-based generator for the given seed and stream key."""
    ss = np.random.SeedSequence(entropy=int(seed) & _MASK64, spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))
