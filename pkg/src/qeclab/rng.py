"""Counter-based randomness with per-trial substreams.

Monte Carlo trials each get their own generator keyed by (seed, trial).
Philox is counter-based: the key fixes the whole stream, so a trial's draws
depend only on (seed, trial) and its own draw order -- never on which
worker ran it or in what order trials executed. That makes experiment
output byte-reproducible at any parallelism level.
"""

from __future__ import annotations

import numpy as np


_MASK64 = (1 << 64) - 1


def trial_generator(seed, trial):
    """Deterministic substream for one trial of one experiment.

    seed and trial are reduced mod 2^64, so negative seeds are accepted
    (and still deterministic)."""
    key = np.array([int(seed) & _MASK64, int(trial) & _MASK64],
                   dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
