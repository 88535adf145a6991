"""Deterministic random streams for simulation runs.

Every random decision in a run (graph wiring, node IDs, attack choices) is
drawn from a single SplitMix64 stream so that traces are bit-reproducible
across platforms and Python versions.  The constants are the standard
SplitMix64 ones:

    state increment  0x9E3779B97F4A7C15
    mix multiplier 1 0xBF58476D1CE4E5B9
    mix multiplier 2 0x94D049BB133111EB

Replicate r of an experiment runs on ``child_seed(seed, r)`` =
``mix64(seed + (r + 1) * 0x9E3779B97F4A7C15)``, which decorrelates the
replicate streams while keeping them a pure function of (seed, r).
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer: avalanche a 64-bit value."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def child_seed(seed: int, index: int) -> int:
    """Derive an independent 64-bit seed for replicate `index` of a sweep."""
    if index < 0:
        raise ValueError("replicate index must be nonnegative")
    return mix64(seed + (index + 1) * _GAMMA)


class SplitMix64:
    """Minimal deterministic PRNG with the few draws the simulator needs."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return mix64(self._state)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next64() >> 11) * (2.0 ** -53)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n), bias-free via rejection."""
        if n <= 0:
            raise ValueError("randrange bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        r = self.next64()
        while r >= limit:
            r = self.next64()
        return r % n

    def choice(self, seq):
        if not len(seq):
            raise IndexError("choice from empty sequence")
        return seq[self.randrange(len(seq))]
