"""Forward iteration of planar self-maps, orbit classification, preimages.

A map carries the data needed to certify orbit behaviour numerically: an
attracting fixed point with a contraction certificate (radius + factor in
(0,1)) and an escape radius beyond which moduli grow monotonically.  An
orbit is classified ``converged`` once it enters the certified contraction
disk, ``escaped`` once its modulus exceeds the escape radius, and
``unresolved`` otherwise.  Unresolved points are reported as such, never
silently classified: the basin boundary is undecidable by finite iteration.

All modulus comparisons are done on squared moduli so that the scalar path
here agrees bit-for-bit with the vectorised and compiled grid backends.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import EscapeOverflowError

CONVERGED = "converged"
ESCAPED = "escaped"
UNRESOLVED = "unresolved"

#: ``iterate`` aborts once an orbit modulus exceeds this guard.
OVERFLOW_MODULUS = 1e150


def require_finite(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite point {z!r} not admitted")
    return z


@dataclass(frozen=True)
class IterationMap:
    """A self-map of a planar domain with certified fixed-point data.

    ``preimages`` must return the full solution set of ``evaluate(x) == z``
    counted with multiplicity (exactly ``degree`` roots); maps without
    algebraic preimage support may leave it ``None``, in which case the
    preimage-based operations raise.

    The contraction certificate promises ``|evaluate(z) - fixed_point| <=
    contraction_factor * |z - fixed_point|`` whenever ``|z - fixed_point| <
    contraction_radius``.
    """

    evaluate: Callable[[complex], complex]
    degree: int
    fixed_point: complex
    contraction_radius: float
    contraction_factor: float
    escape_radius: float
    preimages: Optional[Callable[[complex], list]] = None
    name: str = "map"

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be a positive integer")
        if not 0.0 < self.contraction_factor < 1.0:
            raise ValueError("contraction_factor must lie in (0, 1)")
        if self.contraction_radius <= 0.0 or self.escape_radius <= 0.0:
            raise ValueError("radii must be positive")
        residual = abs(self.evaluate(self.fixed_point) - self.fixed_point)
        if residual > 1e-12 * max(1.0, abs(self.fixed_point)):
            raise ValueError("fixed_point is not fixed by evaluate")


@dataclass(frozen=True)
class OrbitReport:
    """Outcome of :func:`classify_orbit`.

    ``points`` holds the orbit up to and including the decision point;
    ``tail_l2_bound`` bounds the sum of squared distances to the fixed point
    over the *unreported* tail of the orbit, and is finite only for
    converged orbits.
    """

    points: tuple
    status: str
    steps_used: int
    tail_l2_bound: float


def iterate(mapping: IterationMap, z: complex, n: int) -> complex:
    """Apply the map n times; n = 0 returns the point unchanged."""
    z = require_finite(z)
    if n < 0:
        raise ValueError("iteration count must be nonnegative")
    w = z
    for _ in range(n):
        w = mapping.evaluate(w)
        if abs(w) > OVERFLOW_MODULUS:
            raise EscapeOverflowError(
                f"orbit modulus exceeded {OVERFLOW_MODULUS:g} under {mapping.name}"
            )
    return w


def classify_orbit(mapping: IterationMap, z: complex, max_steps: int) -> OrbitReport:
    """Iterate until the orbit certifies convergence or escape.

    At most ``max_steps`` applications of the map are performed.  A
    converged report carries a geometric tail bound derived from the
    contraction certificate.
    """
    z = require_finite(z)
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    rho2 = mapping.contraction_radius * mapping.contraction_radius
    esc2 = mapping.escape_radius * mapping.escape_radius
    ell = mapping.fixed_point
    points = [z]
    for step in range(max_steps + 1):
        w = points[-1]
        d = w - ell
        d2 = d.real * d.real + d.imag * d.imag
        if d2 < rho2:
            c = mapping.contraction_factor
            tail = d2 * c * c / (1.0 - c * c)
            return OrbitReport(tuple(points), CONVERGED, step, tail)
        m2 = w.real * w.real + w.imag * w.imag
        if m2 > esc2:
            return OrbitReport(tuple(points), ESCAPED, step, math.inf)
        if step == max_steps:
            break
        points.append(mapping.evaluate(w))
    return OrbitReport(tuple(points), UNRESOLVED, max_steps, math.inf)


def preimages(mapping: IterationMap, z: complex) -> list:
    """All `degree` solutions of evaluate(x) == z, sorted by (re, im)."""
    z = require_finite(z)
    if mapping.preimages is None:
        raise ValueError(f"map {mapping.name!r} does not support preimages")
    roots = [complex(r) for r in mapping.preimages(z)]
    if len(roots) != mapping.degree:
        raise ValueError(
            f"map {mapping.name!r} returned {len(roots)} preimages, expected {mapping.degree}"
        )
    roots.sort(key=lambda r: (r.real, r.imag))
    return roots


def monomial_map(power: int) -> IterationMap:
    """The map z -> z**power on the unit disk, attracting fixed point 0.

    Preimages are the full set of `power`-th roots.  Points of modulus one
    stay unresolved (the circle is the boundary); the contraction
    certificate |z**p| <= (1/2)**(p-1) |z| holds on |z| < 1/2.
    """
    if power < 2:
        raise ValueError("power must be >= 2")

    def evaluate(z: complex) -> complex:
        w = z
        for _ in range(power - 1):
            w = w * z
        return w

    def roots(z: complex) -> list:
        if z == 0:
            return [0j] * power
        principal = z ** (1.0 / power)
        unit = cmath.exp(2j * cmath.pi / power)
        out = []
        r = principal
        for _ in range(power):
            out.append(r)
            r = r * unit
        return out

    return IterationMap(
        evaluate=evaluate,
        degree=power,
        fixed_point=0j,
        contraction_radius=0.5,
        contraction_factor=0.5 ** (power - 1),
        escape_radius=1.0,
        preimages=roots,
        name=f"z^{power}",
    )
