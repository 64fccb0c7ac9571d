"""Pure-numpy grid classifier for the quartic basin map z -> z**4 - 2 z**2.

This is the fallback for the compiled extension.  Every floating-point
expression here is written as the exact real-arithmetic expansion of the
scalar complex path (z2 = z*z; z2*(z2 - 2)), with modulus tests done on
squares, so scalar, numpy, and compiled classifications agree bit for bit.

Status codes: 0 unresolved, 1 converged, 2 escaped.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

#: hard cap on kernel-diagonal tail iterations after convergence
_TAIL_GUARD = 4096


def classify_block(
    re_min: float,
    re_max: float,
    im_min: float,
    im_max: float,
    width: int,
    height: int,
    row_start: int,
    row_count: int,
    max_steps: int,
    contraction_radius: float,
    escape_radius: float,
    want_kernel: bool,
):
    """Classify pixel centers of global rows [row_start, row_start+row_count).

    Returns (status uint8, steps int32, kernel float64 | None); row 0 of the
    global image is the top edge (im_max side).
    """
    scale_re = (re_max - re_min) / width
    scale_im = (im_max - im_min) / height
    re = re_min + (np.arange(width, dtype=np.float64) + 0.5) * scale_re
    rows = np.arange(row_start, row_start + row_count, dtype=np.float64)
    im = im_max - (rows + 0.5) * scale_im

    shape = (row_count, width)
    x = np.broadcast_to(re[None, :], shape).copy()
    y = np.broadcast_to(im[:, None], shape).copy()
    status = np.zeros(shape, dtype=np.uint8)
    steps = np.full(shape, max_steps, dtype=np.int32)
    undecided = np.ones(shape, dtype=bool)
    kernel = np.ones(shape, dtype=np.float64) if want_kernel else None
    accumulating = np.ones(shape, dtype=bool) if want_kernel else None

    rho2 = contraction_radius * contraction_radius
    esc2 = escape_radius * escape_radius

    for step in range(max_steps + 1):
        d2 = x * x + y * y
        conv = undecided & (d2 < rho2)
        status[conv] = 1
        steps[conv] = step
        esc = undecided & ~conv & (d2 > esc2)
        status[esc] = 2
        steps[esc] = step
        undecided &= ~(conv | esc)
        if want_kernel:
            accumulating &= ~esc
            factor = 1.0 + d2
            accumulating &= factor != 1.0
            kernel[accumulating] *= factor[accumulating]
        if step == max_steps:
            break
        advance = (undecided | accumulating) if want_kernel else undecided
        if not advance.any():
            break
        xa = x[advance]
        ya = y[advance]
        u = xa * xa - ya * ya
        v = 2.0 * (xa * ya)
        us = u - 2.0
        x[advance] = u * us - v * v
        y[advance] = u * v + v * us

    if want_kernel:
        # only converged pixels carry a kernel value; finish their tails
        kernel[status != 1] = 0.0
        idx = np.flatnonzero((accumulating & (status == 1)).ravel())
        xf = x.ravel()[idx]
        yf = y.ravel()[idx]
        kernel_flat = kernel.ravel()
        guard = 0
        while idx.size and guard < _TAIL_GUARD:
            u = xf * xf - yf * yf
            v = 2.0 * (xf * yf)
            us = u - 2.0
            xf = u * us - v * v
            yf = u * v + v * us
            d2 = xf * xf + yf * yf
            factor = 1.0 + d2
            live = factor != 1.0
            kernel_flat[idx[live]] *= factor[live]
            idx = idx[live]
            xf = xf[live]
            yf = yf[live]
            guard += 1

    return status, steps, kernel
