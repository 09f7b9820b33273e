"""Seed derivation: (global_seed, label, index) → stable 32-bit seed."""

from __future__ import annotations

import zlib

import numpy as np


def derive_seed(global_seed: int, label: str, index: int = 0) -> int:
    """
    Deterministic child seed.

    The label is hashed with CRC-32 (stable across processes, unlike hash())
    and mixed through numpy's SeedSequence.
    """
    label_key = zlib.crc32(label.encode("utf-8"))
    sequence = np.random.SeedSequence([int(global_seed) & 0xFFFFFFFF, label_key, int(index)])
    return int(sequence.generate_state(1, dtype=np.uint32)[0])
