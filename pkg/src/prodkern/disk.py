"""Blaschke products, model-space bases, and disk kernel factorizations.

The model space attached to a finite Blaschke product b (the orthogonal
complement of b H2 in the Hardy space of the disk) carries the explicit
Takenaka-Malmquist orthonormal basis

    e_j(z) = sqrt(1 - |w_j|^2) / (1 - conj(w_j) z)
             * prod_{i<j} (z - w_i) / (1 - conj(w_i) z),

which reduces to {1, z} for b(z) = z**2.  The basis reproduces the kernel
(1 - b(z) conj(b(w))) / (1 - z conj(w)), giving the one-step multiplicative
splitting of the Cauchy kernel; iterating it with two zeros pinned at the
origin yields the infinite products evaluated by :func:`szego_product` and
:func:`bergman_product`.

The Hardy-space splitting along b is orthogonal (Parseval holds exactly,
see :func:`hardy_disk_decompose`); the squared-factor Bergman splitting is
not, and :func:`bergman_nonorthogonal_witness` exhibits a concrete nonzero
cross inner product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError


@dataclass(frozen=True)
class BlaschkeProduct:
    """b(z) = prod_i (z - w_i) / (1 - z conj(w_i)) with all |w_i| < 1."""

    zeros: tuple

    def __post_init__(self):
        object.__setattr__(self, "zeros", tuple(complex(w) for w in self.zeros))
        if not self.zeros:
            raise ValueError("a Blaschke product needs at least one zero")
        for w in self.zeros:
            if abs(w) >= 1.0:
                raise ValueError(f"zero {w!r} is not inside the open unit disk")

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def evaluate(self, z: complex) -> complex:
        return blaschke_eval(self, z)


def _factor(z: complex, w: complex) -> complex:
    denom = 1.0 - z * w.conjugate()
    if abs(denom) < 1e-13 * (1.0 + abs(z)):
        raise PoleError(f"evaluation at the pole 1/conj({w!r})")
    return (z - w) / denom


def blaschke_eval(b: BlaschkeProduct, z: complex) -> complex:
    z = complex(z)
    value = 1 + 0j
    for w in b.zeros:
        value *= _factor(z, w)
    return value


def model_basis_eval(b: BlaschkeProduct, j: int, z: complex) -> complex:
    """Takenaka-Malmquist basis function e_j, 1 <= j <= degree."""
    if not 1 <= j <= b.degree:
        raise IndexError(f"basis index {j} out of range [1, {b.degree}]")
    z = complex(z)
    w_j = b.zeros[j - 1]
    denom = 1.0 - w_j.conjugate() * z
    if abs(denom) < 1e-13 * (1.0 + abs(z)):
        raise PoleError(f"evaluation at the pole 1/conj({w_j!r})")
    value = math.sqrt(1.0 - abs(w_j) ** 2) / denom
    for w_i in b.zeros[: j - 1]:
        value *= _factor(z, w_i)
    return value


def model_basis(b: BlaschkeProduct) -> tuple:
    """The basis as callables, index 0 holding e_1."""

    def make(j):
        return lambda z: model_basis_eval(b, j, z)

    return tuple(make(j) for j in range(1, b.degree + 1))


def model_kernel_sum(b: BlaschkeProduct, z: complex, w: complex) -> complex:
    return sum(
        model_basis_eval(b, j, z) * model_basis_eval(b, j, w).conjugate()
        for j in range(1, b.degree + 1)
    )


def model_kernel_closed(b: BlaschkeProduct, z: complex, w: complex) -> complex:
    return (1.0 - blaschke_eval(b, z) * blaschke_eval(b, w).conjugate()) / (
        1.0 - z * complex(w).conjugate()
    )


def verify_multi(b: BlaschkeProduct, z: complex, w: complex) -> float:
    """Residual of the one-step splitting of the Cauchy kernel.

    Compares 1/(1 - z conj(w)) against
    (sum_i e_i(z) conj(e_i(w))) / (1 - b(z) conj(b(w))), relative to
    max(1, |Cauchy kernel|).
    """
    z = complex(z)
    w = complex(w)
    lhs = 1.0 / (1.0 - z * w.conjugate())
    rhs = model_kernel_sum(b, z, w) / (1.0 - blaschke_eval(b, z) * blaschke_eval(b, w).conjugate())
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def szego_product(z: complex, w: complex, factors: int) -> complex:
    """prod_{n=0..factors} (1 + q**(2**n)) with q = z conj(w).

    Telescopes to 1/(1-q) as the factor count grows; |q| < 1 required.
    """
    q = complex(z) * complex(w).conjugate()
    if abs(q) >= 1.0:
        raise DomainError(f"|z conj(w)| = {abs(q):g} >= 1")
    value = 1 + 0j
    p = q
    for _ in range(factors + 1):
        value *= 1.0 + p
        p = p * p
    return value


def bergman_product(z: complex, w: complex, factors: int) -> complex:
    """prod_{n=0..factors} (1 + 2 q**(2**n) + q**(2**(n+1))), q = z conj(w)."""
    q = complex(z) * complex(w).conjugate()
    if abs(q) >= 1.0:
        raise DomainError(f"|z conj(w)| = {abs(q):g} >= 1")
    value = 1 + 0j
    p = q
    for _ in range(factors + 1):
        value *= 1.0 + 2.0 * p + p * p
        p = p * p
    return value


def _cauchy_norm_sq(terms) -> float:
    """Squared Hardy norm of sum a_j C_{w_j} via the Cauchy-kernel Gram."""
    total = 0j
    for a_j, w_j in terms:
        for a_k, w_k in terms:
            total += a_j * a_k.conjugate() / (1.0 - w_k * w_j.conjugate())
    return total.real


def hardy_disk_decompose(terms, b: BlaschkeProduct):
    """Split a Cauchy-kernel combination along the basis slots of b.

    ``terms`` is a sequence of (coefficient, center) pairs representing
    f = sum a_j / (1 - z conj(w_j)).  Returns the per-slot component
    sections (living in the Hardy space of the b-variable, centers b(w_j))
    and the Parseval residual |sum ||h_i||^2 - ||f||^2| / ||f||^2.
    """
    terms = tuple((complex(a), complex(w)) for a, w in terms)
    if not terms:
        raise ValueError("empty section")
    for _, w in terms:
        if abs(w) >= 1.0:
            raise DomainError(f"center {w!r} is not inside the open unit disk")
    norm_f = _cauchy_norm_sq(terms)
    components = []
    total = 0.0
    for j in range(1, b.degree + 1):
        comp = tuple(
            (a * model_basis_eval(b, j, w).conjugate(), blaschke_eval(b, w)) for a, w in terms
        )
        components.append(comp)
        total += _cauchy_norm_sq(comp)
    if norm_f <= 0.0:
        return components, 0.0
    return components, abs(total - norm_f) / norm_f


def bergman_inner_poly(p, q) -> complex:
    """Bergman inner product of polynomials: <z^n, z^m> = delta_nm / (n+1)."""
    return sum(
        a * b.conjugate() / (n + 1.0) for n, (a, b) in enumerate(zip(p, q))
    )


def _poly_mul(p, q):
    return list(np.convolve(np.asarray(p, dtype=complex), np.asarray(q, dtype=complex)))


def _poly_compose_square(h):
    """Coefficients of h(z**2) from coefficients of h."""
    out = [0j] * (2 * len(h) - 1) if h else [0j]
    for n, c in enumerate(h):
        out[2 * n] = complex(c)
    return out


def bergman_nonorthogonal_witness() -> float:
    """A nonzero cross inner product in the squared-factor Bergman splitting.

    For b(z) = z**2 with slot functions {1, z}, the function z**2 lies both
    in the (1,1) slot (as 1*1*h(b(z)) with h(u) = u) and in the (2,2) slot
    (as z*z*h(b(z)) with h(u) = 1).  Their Bergman inner product is 1/3,
    witnessing that the splitting is not orthogonal.
    """
    e1 = [1.0 + 0j]
    e2 = [0j, 1.0 + 0j]
    slot_11 = _poly_mul(_poly_mul(e1, e1), _poly_compose_square([0j, 1.0 + 0j]))
    slot_22 = _poly_mul(_poly_mul(e2, e2), _poly_compose_square([1.0 + 0j]))
    return abs(bergman_inner_poly(slot_11, slot_22))
