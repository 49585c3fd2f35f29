"""Portable deterministic randomness.

Every random choice in the toolkit flows from a single 64-bit root seed through
this module, so datasets, layouts, and mock transcripts regenerate identically
on any platform. The generator is xoshiro256** seeded via splitmix64; labeled
child seeds are derived with sha256 so independent pipeline stages (generation,
probing, training) draw from disjoint streams.
"""

from __future__ import annotations

import hashlib
import math

_MASK64 = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64, state


def seed_from(*parts: object) -> int:
    """Hash arbitrary labels (purpose strings, ids, indices) into a 64-bit seed."""
    text = "\x1f".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Rng:
    """xoshiro256** with convenience draws used across the toolkit."""

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        s = []
        state = self.seed
        for _ in range(4):
            value, state = _splitmix64(state)
            s.append(value)
        self._s = s

    def derive(self, *labels: object) -> "Rng":
        """Child generator for an independent, purpose-labeled stream."""
        return Rng(seed_from(self.seed, *labels))

    def next_u64(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s[1] << 17) & _MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (2.0**-53)

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], inclusive, bias-free via rejection."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        limit = (_MASK64 + 1) - ((_MASK64 + 1) % span)
        while True:
            value = self.next_u64()
            if value < limit:
                return lo + value % span

    def choice(self, seq):
        if not seq:
            raise ValueError("choice from empty sequence")
        return seq[self.randint(0, len(seq) - 1)]

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]

    def normal(self) -> float:
        """Standard normal via Box-Muller (one draw per pair, deterministic)."""
        u1 = self.random()
        u2 = self.random()
        while u1 <= 0.0:
            u1 = self.random()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def lognormal(self, mu: float, sigma: float) -> float:
        return math.exp(mu + sigma * self.normal())
