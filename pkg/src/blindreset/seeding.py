"""Deterministic per-cell random streams.

Every stochastic stage derives its generator from a (domain, key...) tuple, so
any work cell produces the same draws no matter which worker runs it or in
what order cells are scheduled.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

# Fixed domain tags keep independent subsystems on non-overlapping streams.
_DOMAINS = {
    "sequence": 0x5E9,
    "shots": 0x5807,
    "qec": 0x9EC,
    "bootstrap": 0xB007,
    "test": 0x7E57,
}


def stream(domain: str, *key: int) -> np.random.Generator:
    """Return the generator for one work cell.

    The same (domain, key) always yields an identical stream; keys may be any
    Python ints (negative values are reduced mod 2**64).
    """
    if domain not in _DOMAINS:
        raise ValueError(f"unknown stream domain: {domain!r}")
    entropy = (_DOMAINS[domain],) + tuple(int(k) & _MASK64 for k in key)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def label_key(label: str) -> int:
    """Stable 64-bit key for a text label (backend names, method names)."""
    import hashlib

    return int.from_bytes(hashlib.blake2b(label.encode(), digest_size=8).digest(), "big")
