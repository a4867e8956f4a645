"""Counter-based random streams for reproducible, order-independent Monte Carlo.

Every trial gets its own Philox stream keyed by ``(seed, index)``.  Results of
a batch computation are therefore identical no matter how trials are chunked,
scheduled, or distributed over workers: the reduction is a sum of per-trial
integers, and each trial's draws depend only on its key.
"""

from __future__ import annotations

import numpy as np

__all__ = ["trial_stream", "normal_rows"]


def trial_stream(seed: int, index: int) -> np.random.Generator:
    """Independent stream for one trial.

    Parameters
    ----------
    seed : int
        Experiment-level seed (64-bit).
    index : int
        Trial index within the experiment.

    Returns
    -------
    numpy.random.Generator
        Generator whose output depends only on ``(seed, index)``.
    """
    mask = 0xFFFFFFFFFFFFFFFF
    key = np.array([seed & mask, index & mask], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def normal_rows(seed: int, start: int, rows: int, cols: int,
                out: np.ndarray | None = None) -> np.ndarray:
    """Fill a ``(rows, cols)`` matrix, row ``i`` drawn from stream ``start + i``.

    Allocating ``out`` once and reusing it across chunks avoids churn in the
    hot sampling loops.
    """
    if out is None:
        out = np.empty((rows, cols))
    for i in range(rows):
        g = trial_stream(seed, start + i)
        g.standard_normal(out=out[i])
    return out
