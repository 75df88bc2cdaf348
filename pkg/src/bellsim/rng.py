"""Deterministic RNG sub-streams.

All randomness in the package flows from a single 64-bit master seed.  A
sub-stream is addressed by a tuple of labels (strings or integers), e.g.
``substream(seed, "parity", setting_index, repetition)``.  Labels are hashed
with SHA-256 so the derivation is stable across processes and Python
versions, which makes any execution order of independent jobs yield
identical aggregates.
"""

from __future__ import annotations

import hashlib

import numpy as np


def _label_to_int(label) -> int:
    if isinstance(label, (int, np.integer)):
        return int(label) & 0xFFFFFFFF
    digest = hashlib.sha256(str(label).encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "little")


def substream(master_seed: int, *labels) -> np.random.Generator:
    """Generator for the sub-stream addressed by ``labels`` under ``master_seed``."""
    entropy = [int(master_seed) & 0xFFFFFFFFFFFFFFFF] + [_label_to_int(l) for l in labels]
    return np.random.default_rng(np.random.SeedSequence(entropy))
