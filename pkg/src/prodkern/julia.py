"""The quartic basin example R(z) = z**4 - 2 z**2 = P(P(z)), P(z) = z**2 - 1.

The origin is a superattracting fixed point of R.  On its basin the product
kernel prod_n (1 + R_n(z) conj(R_n(w))) converges, and the degree-4
preimage structure satisfies the exact root sums

    sum z = 0,    sum z**2 = 4    over the four solutions of R(x) = z,

which is what makes the two-symbol family {1, z} with bilinear preimage
averaging an exact isometry pair.  Certified thresholds: orbits entering
|z| < 1/3 contract by at least 19/27 per step (so are square-summable),
and |z| > 2 forces monotone escape.

Basin rendering walks a pixel grid through the selected grid backend
(compiled extension or numpy fallback); output is deterministic for fixed
parameters, independent of thread count.
"""

from __future__ import annotations

import cmath
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _basin
from .iteration import IterationMap, classify_orbit, require_finite
from .kernels import (
    FactorKernel,
    KernelValue,
    ProductKernelModel,
    TruncationPolicy,
    eval_kernel,
)

CONTRACTION_RADIUS = 1.0 / 3.0
CONTRACTION_FACTOR = 19.0 / 27.0
ESCAPE_RADIUS = 2.0

STATUS_NAMES = {0: "unresolved", 1: "converged", 2: "escaped"}


def julia_polynomial(z: complex) -> complex:
    z2 = z * z
    return z2 * (z2 - 2.0)


def quadratic_step(z: complex) -> complex:
    """P(z) = z**2 - 1; the basin map is its second iterate."""
    return z * z - 1.0


def quartic_preimages(z: complex) -> list:
    """The four solutions of x**4 - 2 x**2 = z, sorted by (re, im).

    With x0 the principal square root of 1 + z, the solutions are the
    principal square roots of 1 + x0 and 1 - x0 together with their
    negatives; branch points (z = -1, z = 0) return repeated roots.
    """
    z = require_finite(z)
    x0 = cmath.sqrt(1.0 + z)
    r_plus = cmath.sqrt(1.0 + x0)
    r_minus = cmath.sqrt(1.0 - x0)
    roots = [r_plus, -r_plus, r_minus, -r_minus]
    roots.sort(key=lambda r: (r.real, r.imag))
    return roots


def julia_map() -> IterationMap:
    """The quartic basin map with its certified thresholds."""
    return IterationMap(
        evaluate=julia_polynomial,
        degree=4,
        fixed_point=0j,
        contraction_radius=CONTRACTION_RADIUS,
        contraction_factor=CONTRACTION_FACTOR,
        escape_radius=ESCAPE_RADIUS,
        preimages=quartic_preimages,
        name="julia",
    )


def julia_model(truncation: Optional[TruncationPolicy] = None) -> ProductKernelModel:
    """Product-kernel model with factor 1 + z conj(w) along the quartic map."""
    return ProductKernelModel(
        factor=FactorKernel(t=lambda z, w: z * complex(w).conjugate(), name="1+z*conj(w)"),
        mapping=julia_map(),
        truncation=truncation or TruncationPolicy(),
        name="julia",
    )


def verify_juliarel(z: complex) -> tuple:
    """Residuals of the exact preimage root sums at z.

    Returns (|sum x|, |sum x**2 - 4|, |mixed sum|) over the four preimages;
    the mixed sum pairs the constant symbol with the coordinate symbol.
    """
    roots = quartic_preimages(z)
    s1 = sum(roots)
    s2 = sum(r * r for r in roots)
    mixed = sum(1.0 * r for r in roots)
    return abs(s1), abs(s2 - 4.0), abs(mixed)


def julia_kernel(z: complex, w: complex, truncation: Optional[TruncationPolicy] = None) -> KernelValue:
    """Evaluate the quartic-map product kernel at (z, w)."""
    return eval_kernel(julia_model(truncation), z, w)


def fatou_classify(z: complex, max_steps: int = 200) -> str:
    """Classify a point against the certified thresholds of the basin map."""
    return classify_orbit(julia_map(), z, max_steps).status


@dataclass(frozen=True)
class BasinImage:
    """Per-pixel classification of a rectangle, row 0 at the top edge.

    ``kernel_diag`` holds K(z, z) for converged pixels (0 elsewhere) and is
    only present when rendered in kernel mode.
    """

    width: int
    height: int
    rect: tuple
    max_steps: int
    status: np.ndarray
    steps: np.ndarray
    kernel_diag: Optional[np.ndarray]


def render_basin(
    rect,
    width: int,
    height: int,
    max_steps: int = 200,
    color_mode: str = "status",
    threads: int = 1,
    backend: Optional[str] = None,
) -> BasinImage:
    """Classify the pixel-center grid of ``rect`` = (re_min, re_max, im_min, im_max).

    ``color_mode`` is one of status, depth, kernel; kernel mode additionally
    accumulates the kernel diagonal for converged pixels.  The output is a
    pure function of the parameters: pixels are independent, so neither the
    backend's scheduling nor ``threads`` affects the result.
    """
    re_min, re_max, im_min, im_max = (float(v) for v in rect)
    if width < 1 or height < 1:
        raise ValueError("width and height must be >= 1")
    if re_max <= re_min or im_max <= im_min:
        raise ValueError("rect must be nondegenerate")
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    if color_mode not in ("status", "depth", "kernel"):
        raise ValueError(f"unknown color mode {color_mode!r}")
    want_kernel = color_mode == "kernel"

    status = np.empty((height, width), dtype=np.uint8)
    steps = np.empty((height, width), dtype=np.int32)
    kernel = np.empty((height, width), dtype=np.float64) if want_kernel else None

    def run_block(row_start: int, row_count: int):
        blk_status, blk_steps, blk_kernel = _basin.classify_block(
            re_min,
            re_max,
            im_min,
            im_max,
            width,
            height,
            row_start,
            row_count,
            max_steps,
            CONTRACTION_RADIUS,
            ESCAPE_RADIUS,
            want_kernel,
            backend=backend,
        )
        status[row_start : row_start + row_count] = blk_status
        steps[row_start : row_start + row_count] = blk_steps
        if want_kernel:
            kernel[row_start : row_start + row_count] = blk_kernel

    threads = max(1, int(threads))
    if threads == 1 or height == 1:
        run_block(0, height)
    else:
        chunk = max(1, -(-height // threads))
        blocks = [(r, min(chunk, height - r)) for r in range(0, height, chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda b: run_block(*b), blocks))

    return BasinImage(width, height, (re_min, re_max, im_min, im_max), max_steps, status, steps, kernel)


def _pgm_header(width: int, height: int, magic: bytes) -> bytes:
    return magic + b"\n%d %d\n255\n" % (width, height)


def basin_to_pgm(image: BasinImage, color_mode: str = "status") -> bytes:
    """Binary PGM (P5) bytes for status or depth mode.

    Status bytes: converged 255, unresolved 128, escaped 0.  Depth bytes:
    min(steps, 255).
    """
    if color_mode == "status":
        data = np.zeros_like(image.status)
        data[image.status == 1] = 255
        data[image.status == 0] = 128
    elif color_mode == "depth":
        data = np.minimum(image.steps, 255).astype(np.uint8)
    else:
        raise ValueError(f"PGM output undefined for color mode {color_mode!r}")
    return _pgm_header(image.width, image.height, b"P5") + data.tobytes()


def basin_to_ppm(image: BasinImage, clamp: float = 10.0) -> bytes:
    """Binary PPM (P6) bytes for kernel mode.

    The kernel diagonal is clamped to [0, clamp] and mapped to the ramp
    (t, t//2, 255-t) with t = round(255 * value / clamp); non-converged
    pixels carry value 0.
    """
    if image.kernel_diag is None:
        raise ValueError("image was not rendered in kernel mode")
    clipped = np.clip(image.kernel_diag, 0.0, clamp)
    t = np.rint(255.0 * clipped / clamp).astype(np.uint8)
    rgb = np.stack([t, t // 2, 255 - t], axis=-1)
    return _pgm_header(image.width, image.height, b"P6") + rgb.tobytes()
