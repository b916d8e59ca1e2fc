"""Deterministic random streams.

A 64-bit user seed is expanded with splitmix64 into one independent
numpy ``Generator`` per (purpose, index) pair, so sample k of an
experiment is reproducible without replaying samples 0..k-1.
"""

from __future__ import annotations

import zlib

import numpy as np

_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def stream_seed(seed: int, *keys) -> int:
    state = int(seed) & _MASK
    for key in keys:
        if isinstance(key, str):
            key = zlib.crc32(key.encode())
        state = splitmix64(state ^ (int(key) & _MASK))
    return splitmix64(state)


def stream(seed: int, *keys) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(stream_seed(seed, *keys)))
