"""Deterministic pseudo-random streams for reproducible experiments.

The generator is SplitMix64 (Steele, Lea & Flood's 64-bit mixer), chosen
because it is trivially portable: the whole state is one 64-bit integer and
the update uses only integer adds, xors, shifts and multiplies mod 2^64.
Derived quantities are defined exactly so that "seed 1" means the same
matrix in any implementation:

* ``next_uint64``: state += 0x9E3779B97F4A7C15; z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31),
  all mod 2^64.
* ``uniform``: ((next_uint64() >> 11) + 0.5) * 2^-53, an open-(0,1) double.
* ``standard_normal``: Box-Muller on consecutive uniforms u1, u2:
  sqrt(-2 ln u1) * cos(2 pi u2) first, sqrt(-2 ln u1) * sin(2 pi u2)
  cached and returned on the next call.
* ``pick_sign``: +1.0 if next_uint64() is even, else -1.0.
* ``sample_without_replacement``: partial Fisher-Yates over [0, n), each
  swap index drawn as i + next_uint64() % (n - i); the selection is
  returned sorted.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """A seeded SplitMix64 stream with scalar helpers."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64
        self._spare_normal: float | None = None

    def next_uint64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """A double in the open interval (0, 1)."""
        return ((self.next_uint64() >> 11) + 0.5) * 2.0**-53

    def uniform_in(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()

    def standard_normal(self) -> float:
        if self._spare_normal is not None:
            z = self._spare_normal
            self._spare_normal = None
            return z
        u1 = self.uniform()
        u2 = self.uniform()
        radius = math.sqrt(-2.0 * math.log(u1))
        angle = 2.0 * math.pi * u2
        self._spare_normal = radius * math.sin(angle)
        return radius * math.cos(angle)

    def pick_sign(self) -> float:
        return 1.0 if self.next_uint64() % 2 == 0 else -1.0

    def sample_without_replacement(self, n: int, k: int) -> list[int]:
        """k distinct integers from [0, n), sorted ascending."""
        if not 0 <= k <= n:
            raise ValueError(f"cannot sample {k} of {n}")
        pool = list(range(n))
        for i in range(k):
            j = i + self.next_uint64() % (n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return sorted(pool[:k])
