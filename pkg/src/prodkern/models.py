"""Named model families and their operator representations.

Three product-kernel models ship:

* ``julia``   factor 1 + z conj(w) along z -> z**4 - 2 z**2, symbols
  {1, z} with *bilinear* preimage averaging (the exact root sums of the
  quartic make that the adjoint).
* ``szego``   factor 1 + z conj(w) along z -> z**2 on the disk, closed form
  1/(1 - z conj(w)); symbols {1, z}, sesquilinear variant.  The
  sesquilinear symbol sums hold exactly on the unit circle and fail inside
  the disk, so the standard isometry grid for this family lies on |z| = 1.
* ``bergman`` factor (1 + z conj(w))**2 along z -> z**2, closed form
  1/(1 - z conj(w))**2; symbols {1, sqrt(2) z, z**2}, sesquilinear.  This
  family deliberately violates the isometry relations and serves as the
  negative witness.

The finite-dimensional half-plane family is addressed by name ``lphi``
(default model phi(z) = 1/z) for kernel evaluation.
"""

from __future__ import annotations

import math
from typing import Optional

from .errors import DomainError
from .halfplane import HerglotzModel, lphi_kernel
from .iteration import CONVERGED, classify_orbit, monomial_map
from .julia import julia_model
from .kernels import FactorKernel, KernelValue, ProductKernelModel, TruncationPolicy, eval_kernel
from .operators import (
    VARIANT_BILINEAR,
    VARIANT_SESQUILINEAR,
    CuntzRepresentation,
    SymbolFamily,
)
from .rng import Lcg

PRODUCT_MODEL_NAMES = ("julia", "szego", "bergman")
MODEL_NAMES = PRODUCT_MODEL_NAMES + ("lphi",)

_SQRT2 = math.sqrt(2.0)


def szego_model(truncation: Optional[TruncationPolicy] = None) -> ProductKernelModel:
    return ProductKernelModel(
        factor=FactorKernel(t=lambda z, w: z * complex(w).conjugate(), name="1+z*conj(w)"),
        mapping=monomial_map(2),
        truncation=truncation or TruncationPolicy(),
        name="szego",
    )


def bergman_model(truncation: Optional[TruncationPolicy] = None) -> ProductKernelModel:
    def t(z: complex, w: complex) -> complex:
        q = z * complex(w).conjugate()
        return 2.0 * q + q * q

    return ProductKernelModel(
        factor=FactorKernel(t=t, name="(1+z*conj(w))^2"),
        mapping=monomial_map(2),
        truncation=truncation or TruncationPolicy(),
        name="bergman",
    )


def product_model(name: str, truncation: Optional[TruncationPolicy] = None) -> ProductKernelModel:
    if name == "julia":
        return julia_model(truncation)
    if name == "szego":
        return szego_model(truncation)
    if name == "bergman":
        return bergman_model(truncation)
    raise ValueError(f"unknown product model {name!r}; have {PRODUCT_MODEL_NAMES}")


def default_lphi_model(masses=(1.0,), poles=(0.0,)) -> HerglotzModel:
    """The rational Herglotz model used by the CLI; defaults to phi(z) = 1/z."""
    return HerglotzModel(masses=tuple(masses), poles=tuple(poles))


def evaluate_named_kernel(
    name: str,
    z: complex,
    w: complex,
    truncation: Optional[TruncationPolicy] = None,
    lphi: Optional[HerglotzModel] = None,
) -> KernelValue:
    """Kernel evaluation for any named model, product or finite-dimensional."""
    if name in PRODUCT_MODEL_NAMES:
        return eval_kernel(product_model(name, truncation), z, w)
    if name == "lphi":
        model = lphi or default_lphi_model()
        return KernelValue(lphi_kernel(model, z, w), model.count, 0.0)
    raise ValueError(f"unknown model {name!r}; have {MODEL_NAMES}")


def julia_rep(truncation: Optional[TruncationPolicy] = None) -> CuntzRepresentation:
    symbols = SymbolFamily(
        functions=(lambda z: 1.0 + 0j, lambda z: complex(z)),
        variant=VARIANT_BILINEAR,
    )
    return CuntzRepresentation(symbols=symbols, model=julia_model(truncation), name="julia")


def szego_rep(truncation: Optional[TruncationPolicy] = None) -> CuntzRepresentation:
    symbols = SymbolFamily(
        functions=(lambda z: 1.0 + 0j, lambda z: complex(z)),
        variant=VARIANT_SESQUILINEAR,
    )
    return CuntzRepresentation(symbols=symbols, model=szego_model(truncation), name="szego")


def bergman_rep(truncation: Optional[TruncationPolicy] = None) -> CuntzRepresentation:
    symbols = SymbolFamily(
        functions=(
            lambda z: 1.0 + 0j,
            lambda z: _SQRT2 * complex(z),
            lambda z: complex(z) * complex(z),
        ),
        variant=VARIANT_SESQUILINEAR,
    )
    return CuntzRepresentation(symbols=symbols, model=bergman_model(truncation), name="bergman")


def representation(name: str, truncation: Optional[TruncationPolicy] = None) -> CuntzRepresentation:
    if name == "julia":
        return julia_rep(truncation)
    if name == "szego":
        return szego_rep(truncation)
    if name == "bergman":
        return bergman_rep(truncation)
    raise ValueError(f"unknown representation {name!r}; have {PRODUCT_MODEL_NAMES}")


def sample_in_domain(model: ProductKernelModel, rng: Lcg, count: int, radius: float) -> list:
    """Seeded points of the disk of ``radius`` that classify as converged."""
    out = []
    guard = 0
    while len(out) < count:
        z = rng.complex_in_disk(radius)
        report = classify_orbit(model.mapping, z, model.truncation.max_factors)
        if report.status == CONVERGED:
            out.append(z)
        guard += 1
        if guard > 1000 * count:
            raise DomainError(
                f"could not draw {count} converged samples of radius {radius} "
                f"for model {model.name!r}"
            )
    return out


def standard_cuntz_grid(name: str, rng: Lcg, count: int = 50) -> list:
    """The verification grid each representation's isometry check runs on.

    julia: converged points drawn from |z| < 1.5.  szego: points on the
    unit circle, where the sesquilinear symbol sums hold exactly.  bergman:
    interior points (negative witness; the failure is interior and
    boundary alike), with two fixed points pinned so the witness never
    degenerates.
    """
    if name == "julia":
        return sample_in_domain(julia_model(), rng, count, 1.5)
    if name == "szego":
        return [rng.unit_circle_point() for _ in range(count)]
    if name == "bergman":
        pts = [complex(0.2, 0.0), complex(0.7, 0.1)]
        while len(pts) < count:
            pts.append(rng.complex_in_disk(0.8))
        return pts
    raise ValueError(f"unknown representation {name!r}")
