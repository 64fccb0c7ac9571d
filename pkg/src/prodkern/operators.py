"""The weighted composition family S_j f = e_j (f o R) and its adjoints.

A representation couples a symbol family (an orthonormal basis e_j of the
factor-kernel space) with a product-kernel model.  Operators act on
evaluation trees (:class:`PointFunction`), so every identity is checked
pointwise; no discretisation or quadrature is involved.

Two adjoint routes are implemented and cross-validated:

* the section rule, mapping a kernel section term (a, w) to
  (a conj(e_j(w)), R(w)); and
* preimage averaging, (S_j* f)(z) = (1/n) sum over R(x) = z of
  sigma(e_j(x)) f(x), where sigma is conjugation for the sesquilinear
  variant and the identity for the bilinear one.

The preimage-averaged operator equals the Hilbert adjoint exactly when the
matching symbol-sum hypothesis holds on the domain; ``verify_symbol_sums``
measures that hypothesis directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError
from .iteration import IterationMap, preimages
from .kernels import ProductKernelModel, eval_kernel, in_domain, kernel_matrix

VARIANT_BILINEAR = "bilinear"
VARIANT_SESQUILINEAR = "sesquilinear"


class PointFunction:
    """An evaluable function of one complex variable.

    Closed under linear combinations, pointwise products, and composition
    with a map; instances are immutable evaluation trees and thread-safe.
    """

    __slots__ = ("_fn",)

    def __init__(self, fn: Callable[[complex], complex]):
        self._fn = fn

    def __call__(self, z: complex) -> complex:
        return complex(self._fn(z))

    @staticmethod
    def constant(c: complex) -> "PointFunction":
        c = complex(c)
        return PointFunction(lambda z: c)

    @staticmethod
    def one() -> "PointFunction":
        return PointFunction.constant(1.0)

    @staticmethod
    def coordinate() -> "PointFunction":
        return PointFunction(lambda z: complex(z))

    def compose(self, mapping) -> "PointFunction":
        inner = mapping.evaluate if isinstance(mapping, IterationMap) else mapping
        return PointFunction(lambda z: self._fn(inner(z)))

    def __add__(self, other) -> "PointFunction":
        other = _as_point_function(other)
        return PointFunction(lambda z: self._fn(z) + other._fn(z))

    __radd__ = __add__

    def __sub__(self, other) -> "PointFunction":
        other = _as_point_function(other)
        return PointFunction(lambda z: self._fn(z) - other._fn(z))

    def __rsub__(self, other) -> "PointFunction":
        other = _as_point_function(other)
        return PointFunction(lambda z: other._fn(z) - self._fn(z))

    def __mul__(self, other) -> "PointFunction":
        other = _as_point_function(other)
        return PointFunction(lambda z: self._fn(z) * other._fn(z))

    __rmul__ = __mul__


def _as_point_function(obj) -> PointFunction:
    if isinstance(obj, PointFunction):
        return obj
    if isinstance(obj, (int, float, complex)):
        return PointFunction.constant(obj)
    if callable(obj):
        return PointFunction(obj)
    raise TypeError(f"cannot interpret {obj!r} as a point function")


@dataclass(frozen=True)
class KernelSection:
    """A finite combination sum_i a_i K(., w_i) of kernel sections.

    Centers must lie in the model's convergence domain; this is checked at
    construction so adjoint rules never move a section out of domain
    silently.
    """

    model: ProductKernelModel
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((complex(a), complex(w)) for a, w in self.terms))
        for _, w in self.terms:
            if not in_domain(self.model, w):
                raise DomainError(f"section center {w!r} is outside the convergence domain")

    def evaluate(self, z: complex) -> complex:
        return sum((a * eval_kernel(self.model, z, w).value for a, w in self.terms), 0j)

    def as_point_function(self) -> PointFunction:
        return PointFunction(self.evaluate)


@dataclass(frozen=True)
class SymbolFamily:
    """Orthonormal basis functions of the factor-kernel space.

    ``variant`` selects which symbol-sum hypothesis the preimage-averaged
    adjoint uses: ``sesquilinear`` conjugates the symbol at each preimage,
    ``bilinear`` does not.
    """

    functions: tuple
    variant: str

    def __post_init__(self):
        if self.variant not in (VARIANT_BILINEAR, VARIANT_SESQUILINEAR):
            raise ValueError(f"unknown variant {self.variant!r}")
        object.__setattr__(self, "functions", tuple(self.functions))

    @property
    def count(self) -> int:
        return len(self.functions)

    def e(self, j: int) -> Callable[[complex], complex]:
        if not 0 <= j < self.count:
            raise IndexError(f"symbol index {j} out of range [0, {self.count})")
        return self.functions[j]

    def conjugator(self) -> Callable[[complex], complex]:
        if self.variant == VARIANT_SESQUILINEAR:
            return lambda v: v.conjugate()
        return lambda v: v


@dataclass(frozen=True)
class CuntzRepresentation:
    """Symbol family + product-kernel model: all data the operators need."""

    symbols: SymbolFamily
    model: ProductKernelModel
    name: str = "rep"

    @property
    def mapping(self) -> IterationMap:
        return self.model.mapping

    @property
    def count(self) -> int:
        return self.symbols.count


def apply_S(rep: CuntzRepresentation, j: int, f) -> PointFunction:
    """(S_j f)(z) = e_j(z) f(R(z))."""
    e_j = rep.symbols.e(j)
    f = _as_point_function(f)
    evaluate = rep.mapping.evaluate
    return PointFunction(lambda z: e_j(z) * f(evaluate(z)))


def apply_S_star_preimage(rep: CuntzRepresentation, j: int, f) -> PointFunction:
    """Adjoint by preimage averaging in the representation's variant."""
    e_j = rep.symbols.e(j)
    f = _as_point_function(f)
    sigma = rep.symbols.conjugator()
    mapping = rep.mapping

    def value(z: complex) -> complex:
        roots = preimages(mapping, z)
        return sum(sigma(complex(e_j(x))) * f(x) for x in roots) / len(roots)

    return PointFunction(value)


def apply_S_star_section(rep: CuntzRepresentation, j: int, section: KernelSection) -> KernelSection:
    """Section rule for the adjoint: (a, w) -> (a conj(e_j(w)), R(w))."""
    e_j = rep.symbols.e(j)
    evaluate = rep.mapping.evaluate
    terms = tuple((a * complex(e_j(w)).conjugate(), evaluate(w)) for a, w in section.terms)
    return KernelSection(section.model, terms)


def symbol_sum(rep: CuntzRepresentation, z: complex, w: complex) -> complex:
    """sum_j e_j(z) conj(e_j(w)); reproduces the factor kernel k(z,w)."""
    return sum(complex(e(z)) * complex(e(w)).conjugate() for e in rep.symbols.functions)


def verify_sum_identity(rep: CuntzRepresentation, points: Sequence[complex]) -> float:
    """Max residual of sum_j e_j(z) conj(e_j(w)) K(Rz, Rw) = K(z,w) over pairs.

    Every ordered pair drawn from ``points`` is tested; the residual is
    relative to max(1, |K(z,w)|).
    """
    pts = [complex(p) for p in points]
    evaluate = rep.mapping.evaluate
    gram = kernel_matrix(rep.model, pts)
    gram_mapped = kernel_matrix(rep.model, [evaluate(p) for p in pts])
    worst = 0.0
    for i, z in enumerate(pts):
        for j, w in enumerate(pts):
            lhs = symbol_sum(rep, z, w) * gram_mapped[i, j]
            residual = abs(lhs - gram[i, j]) / max(1.0, abs(gram[i, j]))
            worst = max(worst, residual)
    return worst


def verify_orthogonality(
    rep: CuntzRepresentation, points: Sequence[complex], probes: Iterable
) -> np.ndarray:
    """Residual matrix of S_i* S_j = delta_ij I under preimage averaging.

    Entry (i, j) is the max over probes f and points z of
    |(S_i* S_j f)(z) - delta_ij f(z)|.
    """
    probes = [_as_point_function(p) for p in probes]
    n = rep.count
    sigma = rep.symbols.conjugator()
    mapping = rep.mapping
    residuals = np.zeros((n, n))
    for z in points:
        roots = preimages(mapping, z)
        e_vals = [[complex(e(x)) for x in roots] for e in rep.symbols.functions]
        for f in probes:
            f_mapped = [f(mapping.evaluate(x)) for x in roots]
            f_z = f(z)
            for i in range(n):
                for j in range(n):
                    acc = sum(
                        sigma(e_vals[i][m]) * e_vals[j][m] * f_mapped[m]
                        for m in range(len(roots))
                    ) / len(roots)
                    expected = f_z if i == j else 0j
                    residuals[i, j] = max(residuals[i, j], abs(acc - expected))
    return residuals


def verify_symbol_sums(rep: CuntzRepresentation, points: Sequence[complex]) -> np.ndarray:
    """Residuals of (1/n) sum over R(x)=z of sigma(e_j(x)) e_k(x) = delta_jk."""
    n = rep.count
    sigma = rep.symbols.conjugator()
    residuals = np.zeros((n, n))
    for z in points:
        roots = preimages(rep.mapping, z)
        e_vals = [[complex(e(x)) for x in roots] for e in rep.symbols.functions]
        for j in range(n):
            for k in range(n):
                acc = sum(
                    sigma(e_vals[j][m]) * e_vals[k][m] for m in range(len(roots))
                ) / len(roots)
                expected = 1.0 if j == k else 0.0
                residuals[j, k] = max(residuals[j, k], abs(acc - expected))
    return residuals
