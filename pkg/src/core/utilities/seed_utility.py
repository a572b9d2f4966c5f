"""Deterministic seed derivation for tasks and independent random streams."""

import numpy as np


def derive_seed(base_seed: int, *keys: int) -> int:
    """Hash ``(base_seed, *keys)`` into a 32-bit seed.

    The same key tuple always yields the same seed, independent of the order
    in which tasks are scheduled.
    """
    sequence = np.random.SeedSequence([int(base_seed) & 0xFFFFFFFFFFFFFFFF, *[int(k) for k in keys]])
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def stream(seed: int, *keys: int) -> np.random.Generator:
    """A Generator for the sub-stream ``keys`` of ``seed``."""
    return np.random.default_rng(derive_seed(seed, *keys))


# Stream identifiers used when one seed drives several independent draws.
STREAM_DIRECTIONS = 0
STREAM_LEVELS = 1
STREAM_MC_POINTS = 2
STREAM_SECOND_CLOUD = 3
