"""Deterministic splitmix64 randomness.

Every seeded object in the package (random modules, random complexes,
verification batteries) draws from this generator so that reports are
byte-reproducible from the scenario seed alone.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    """The standard splitmix64 stream."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-enough draw in [0, n); modulo bias is irrelevant here."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u64() % n

    def choice(self, seq):
        if not seq:
            raise ValueError("choice() on an empty sequence")
        return seq[self.below(len(seq))]

    def spawn(self) -> "SplitMix64":
        """Derive an independent substream (consumes one draw)."""
        return SplitMix64(self.next_u64())
