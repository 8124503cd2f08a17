"""Counter-based, addressable random streams.

Every source of randomness in a chain is a named stream keyed by
(seed, chain index, purpose tag).  Streams are mutually independent Philox
generators, so two samplers built from the same (seed, chain) consume
identical draws purpose-by-purpose -- the basis of the paired-stream
equivalence tests.
"""

from __future__ import annotations

import numpy as np

PURPOSES = ("aux", "extend_x", "extend_v", "pairing", "uniform", "mix")

_MASK64 = (1 << 64) - 1


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def stream_key(seed: int, chain: int, purpose: str) -> int:
    """64-bit stream id = hash(seed, chain index, purpose tag)."""
    if purpose not in PURPOSES:
        raise ValueError(f"unknown stream purpose {purpose!r}")
    h = _splitmix64(seed & _MASK64)
    h = _splitmix64(h ^ chain)
    for byte in purpose.encode():
        h = _splitmix64(h ^ byte)
    return h


class RngBundle:
    """Lazily-created per-purpose generators for one chain."""

    def __init__(self, seed: int, chain: int = 0):
        self.seed = seed
        self.chain = chain
        self._streams: dict[str, np.random.Generator] = {}

    def _gen(self, purpose: str) -> np.random.Generator:
        g = self._streams.get(purpose)
        if g is None:
            g = np.random.Generator(np.random.Philox(key=stream_key(self.seed, self.chain, purpose)))
            self._streams[purpose] = g
        return g

    def normal(self, purpose: str, size: int | None = None):
        return self._gen(purpose).standard_normal(size)

    def coin(self, purpose: str) -> bool:
        return bool(self._gen(purpose).integers(0, 2))

    def uniform(self, purpose: str) -> float:
        return float(self._gen(purpose).random())

    def index(self, purpose: str, n: int) -> int:
        """Uniform draw from {0, ..., n-1}."""
        return int(self._gen(purpose).integers(0, n))
