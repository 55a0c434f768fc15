"""Deterministic RNG construction and splitting.

All randomized procedures take a 64-bit seed and derive their
generators through SeedSequence spawn keys, so results are
reproducible and independent sub-streams (per shot batch, per pair,
per candidate) never overlap.
"""

from __future__ import annotations

import numpy as np


def rng_from_seed(seed: int, *key: int) -> np.random.Generator:
    """Generator for `seed`, split deterministically by the key tuple."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))
