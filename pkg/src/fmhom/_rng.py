"""Counter-based random substreams for reproducible parallel Monte Carlo.

Every sampler draws from Philox4x64 generators keyed by
``(seed, stream << 32 | block)``; trials are processed in fixed blocks of
``BLOCK_TRIALS`` so the random stream consumed by trial *i* depends only on
the seed and the trial schedule, never on the number of worker threads.
Nested simulations (one per scan point or per mode) derive child seeds with a
SplitMix64 hash of (seed, index).

Thread count is capped by the ``FMHOM_THREADS`` environment variable
(default 1); results are bit-identical for any setting.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numpy.random import Generator, Philox

BLOCK_TRIALS = 1 << 16

_MASK64 = (1 << 64) - 1


def splitmix64(x):
    """One SplitMix64 step; standard finalizer constants."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def child_seed(seed, index):
    """Derive an independent 64-bit seed for sub-simulation ``index``."""
    return splitmix64((int(seed) & _MASK64) ^ splitmix64(int(index) & _MASK64))


def block_generator(seed, stream, block):
    """Generator for one (stream, block) substream of ``seed``."""
    if not 0 <= stream < (1 << 32):
        raise ValueError("stream id out of range")
    key = np.array(
        [int(seed) & _MASK64, ((int(stream) << 32) | (int(block) & 0xFFFFFFFF)) & _MASK64],
        dtype=np.uint64,
    )
    return Generator(Philox(key=key))


def thread_count():
    raw = os.environ.get("FMHOM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        n = 1
    return max(1, n)


def run_blocks(trials, block_fn, block_trials=BLOCK_TRIALS):
    """Run ``block_fn(block_index, n_trials)`` over all blocks and collect results.

    The block layout depends only on ``trials`` and ``block_trials``; worker
    threads only change scheduling, not the per-block computations, so any
    associative, order-insensitive reduction of the returned list is
    reproducible.  Results are returned in block order.
    """
    n_blocks = (trials + block_trials - 1) // block_trials
    sizes = [
        min(block_trials, trials - b * block_trials) for b in range(n_blocks)
    ]
    workers = min(thread_count(), n_blocks) if n_blocks else 1
    if workers <= 1:
        return [block_fn(b, sizes[b]) for b in range(n_blocks)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(block_fn, range(n_blocks), sizes))
