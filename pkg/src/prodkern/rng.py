"""Seeded linear-congruential generator for reproducible sample sets.

The generator is fixed by its constants so that sample sets can be
reproduced from a seed alone, in any language:

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2**64

Each draw advances the state once and maps the top 53 bits to [0, 1).
"""

from __future__ import annotations

import cmath
import math

_A = 6364136223846793005
_C = 1442695040888963407
_MASK = (1 << 64) - 1


class Lcg:
    """Deterministic uniform generator; seed fixes the whole stream."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (_A * self._state + _C) & _MASK
        return self._state

    def uniform(self) -> float:
        """Next double in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform_in(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()

    def complex_in_rect(self, re_lo: float, re_hi: float, im_lo: float, im_hi: float) -> complex:
        re = self.uniform_in(re_lo, re_hi)
        im = self.uniform_in(im_lo, im_hi)
        return complex(re, im)

    def complex_in_disk(self, radius: float) -> complex:
        """Uniform in the closed disk, by rejection from the bounding square."""
        while True:
            z = self.complex_in_rect(-radius, radius, -radius, radius)
            if abs(z) <= radius:
                return z

    def unit_circle_point(self) -> complex:
        return cmath.exp(1j * self.uniform_in(0.0, 2.0 * math.pi))
