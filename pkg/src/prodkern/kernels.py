"""Product kernels K(z,w) = prod_n k(R_n z, R_n w) with certified truncation.

The factor kernel has the form k = 1 + t with t positive definite, so the
Cauchy-Schwarz bound |t(z,w)| <= sqrt(t(z,z)) sqrt(t(w,w)) turns the
diagonal orbit decay into a computable bound on the neglected tail of the
product.  Evaluation stops at the first index where that bound drops below
the policy tolerance; hitting the factor budget first is an error, not a
silent truncation.

Both arguments must classify as converged under the model's map (membership
in the convergence domain); escaped or unresolved points are domain errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import BudgetError, DomainError
from .iteration import CONVERGED, IterationMap, classify_orbit, require_finite


@dataclass(frozen=True)
class FactorKernel:
    """A factor k(z,w) = 1 + t(z,w) with t positive definite.

    ``t(z,z)`` must be real and nonnegative, and t Hermitian-symmetric;
    these are relied on for the tail bound, not re-checked per call.
    """

    t: Callable[[complex, complex], complex]
    name: str = "factor"

    def evaluate(self, z: complex, w: complex) -> complex:
        return 1.0 + self.t(z, w)

    def diagonal_root(self, z: complex) -> float:
        """sqrt(t(z,z)), clamped against roundoff below zero."""
        return math.sqrt(max(self.t(z, z).real, 0.0))


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule for infinite products: factor budget and tail tolerance."""

    max_factors: int = 256
    tail_tolerance: float = 1e-12

    def __post_init__(self):
        if self.max_factors < 1:
            raise ValueError("max_factors must be >= 1")
        if not self.tail_tolerance > 0.0:
            raise ValueError("tail_tolerance must be positive")


@dataclass(frozen=True)
class KernelValue:
    value: complex
    factors_used: int
    tail_bound: float


@dataclass(frozen=True)
class ProductKernelModel:
    """A factor kernel iterated along a map, with a truncation policy.

    ``base_value`` is the optional normalisation K(fixed point, fixed point)
    multiplying the infinite product; every shipped model keeps it at 1.
    Instances are immutable and safe to share across threads.
    """

    factor: FactorKernel
    mapping: IterationMap
    truncation: TruncationPolicy = field(default_factory=TruncationPolicy)
    base_value: float = 1.0
    name: str = "model"


@dataclass(frozen=True)
class GramReport:
    matrix: np.ndarray
    min_eigenvalue: float
    trace: float
    psd: bool


def in_domain(model: ProductKernelModel, z: complex) -> bool:
    """True if the point classifies as converged under the model's map."""
    report = classify_orbit(model.mapping, z, model.truncation.max_factors)
    return report.status == CONVERGED


def _orbit(model: ProductKernelModel, z: complex) -> list:
    """Orbit points R_0(z) .. R_{max_factors}(z); domain error if not converged."""
    policy = model.truncation
    report = classify_orbit(model.mapping, z, policy.max_factors)
    if report.status != CONVERGED:
        raise DomainError(
            f"point {z!r} classified {report.status} under {model.mapping.name}; "
            "kernel evaluation requires a converged orbit"
        )
    points = list(report.points)
    while len(points) < policy.max_factors + 1:
        points.append(model.mapping.evaluate(points[-1]))
    return points[: policy.max_factors + 1]


def _diag_roots(model: ProductKernelModel, orbit: Sequence[complex]) -> list:
    return [model.factor.diagonal_root(p) for p in orbit]


def _tail_suffixes(g: Sequence[float]) -> list:
    """suffix[M] = prod_{n=M+1..N}(1 + g_n) - 1 for M = 0..N, where N = len(g)-1."""
    n_last = len(g) - 1
    suffix = [0.0] * (n_last + 1)
    running = 1.0
    for m in range(n_last - 1, -1, -1):
        running *= 1.0 + g[m + 1]
        suffix[m] = running - 1.0
    return suffix


def _pair_eval(
    model: ProductKernelModel,
    orbit_z: Sequence[complex],
    roots_z: Sequence[float],
    orbit_w: Sequence[complex],
    roots_w: Sequence[float],
) -> KernelValue:
    policy = model.truncation
    g = [a * b for a, b in zip(roots_z, roots_w)]
    suffix = _tail_suffixes(g)
    stop = -1
    for m in range(policy.max_factors):
        if suffix[m] <= policy.tail_tolerance:
            stop = m
            break
    if stop < 0:
        raise BudgetError(
            f"tail bound not below {policy.tail_tolerance:g} within "
            f"{policy.max_factors} factors of model {model.name!r}"
        )
    value = complex(model.base_value)
    for n in range(stop + 1):
        f = 1.0 + model.factor.t(orbit_z[n], orbit_w[n])
        if f == 0:
            return KernelValue(0j, n + 1, 0.0)
        value *= f
    return KernelValue(value, stop + 1, suffix[stop])


def eval_kernel(model: ProductKernelModel, z: complex, w: complex) -> KernelValue:
    """Evaluate the product kernel with a certified relative tail bound."""
    z = require_finite(z)
    w = require_finite(w)
    orbit_z = _orbit(model, z)
    orbit_w = _orbit(model, w) if w != z else orbit_z
    roots_z = _diag_roots(model, orbit_z)
    roots_w = _diag_roots(model, orbit_w) if w != z else roots_z
    return _pair_eval(model, orbit_z, roots_z, orbit_w, roots_w)


def tail_bound(model: ProductKernelModel, z: complex, w: complex, after: int) -> float:
    """Certified relative bound on the factors beyond index ``after``.

    Computed as prod_{n=after+1..max_factors}(1 + sqrt(t(R_n z, R_n z))
    sqrt(t(R_n w, R_n w))) - 1.
    """
    if after < 0:
        raise ValueError("index must be nonnegative")
    orbit_z = _orbit(model, z)
    orbit_w = _orbit(model, w)
    g = [a * b for a, b in zip(_diag_roots(model, orbit_z), _diag_roots(model, orbit_w))]
    if after >= len(g) - 1:
        return 0.0
    suffix = _tail_suffixes(g)
    return suffix[after]


def verify_recursion(model: ProductKernelModel, z: complex, w: complex) -> float:
    """Residual of K(z,w) = k(z,w) K(R z, R w), relative to max(1, |K|)."""
    kzw = eval_kernel(model, z, w).value
    rz = model.mapping.evaluate(complex(z))
    rw = model.mapping.evaluate(complex(w))
    krzrw = eval_kernel(model, rz, rw).value
    return abs(kzw - model.factor.evaluate(z, w) * krzrw) / max(1.0, abs(kzw))


def kernel_matrix(model: ProductKernelModel, points: Sequence[complex]) -> np.ndarray:
    """Hermitian matrix K(z_i, z_j); domain errors name the offending pair."""
    pts = [require_finite(p) for p in points]
    orbits = []
    roots = []
    for i, p in enumerate(pts):
        try:
            orb = _orbit(model, p)
        except DomainError as exc:
            raise DomainError(f"point index {i}: {exc}") from exc
        orbits.append(orb)
        roots.append(_diag_roots(model, orb))
    n = len(pts)
    out = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(i, n):
            try:
                val = _pair_eval(model, orbits[i], roots[i], orbits[j], roots[j]).value
            except BudgetError as exc:
                raise BudgetError(f"pair ({i}, {j}): {exc}") from exc
            out[i, j] = val
            if j != i:
                out[j, i] = val.conjugate()
    return out


def gram_matrix(
    model: ProductKernelModel, points: Sequence[complex], tol: float = 1e-8
) -> GramReport:
    """Gram matrix with its minimum eigenvalue and a scale-free PSD flag.

    The flag tests min_eigenvalue >= -tol * trace, so it is invariant under
    rescaling the kernel.
    """
    matrix = kernel_matrix(model, points)
    eigenvalues = np.linalg.eigvalsh(matrix)
    min_eig = float(eigenvalues[0])
    trace = float(matrix.trace().real)
    return GramReport(matrix, min_eig, trace, min_eig >= -tol * trace)
