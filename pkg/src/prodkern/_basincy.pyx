# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid classifier for the quartic basin map z -> z**4 - 2 z**2.

Hot-loop twin of ``_basin_py``: identical arithmetic, written out on real
doubles (complex multiply expanded by hand, modulus tests on squares), so
the two backends classify every pixel identically.  Compiled with
-ffp-contract=off to forbid fused multiply-adds that would break that.

Status codes: 0 unresolved, 1 converged, 2 escaped.
"""

import numpy as np

BACKEND_NAME = "compiled"

cdef int _TAIL_GUARD = 4096


def classify_block(
    double re_min,
    double re_max,
    double im_min,
    double im_max,
    int width,
    int height,
    int row_start,
    int row_count,
    int max_steps,
    double contraction_radius,
    double escape_radius,
    bint want_kernel,
):
    """Classify pixel centers of global rows [row_start, row_start+row_count).

    Returns (status uint8, steps int32, kernel float64 | None); row 0 of the
    global image is the top edge (im_max side).
    """
    status_arr = np.zeros((row_count, width), dtype=np.uint8)
    steps_arr = np.full((row_count, width), max_steps, dtype=np.int32)
    kernel_arr = np.ones((row_count, width), dtype=np.float64) if want_kernel else None

    cdef unsigned char[:, ::1] status = status_arr
    cdef int[:, ::1] steps = steps_arr
    cdef double[:, ::1] kernel
    if want_kernel:
        kernel = kernel_arr

    cdef double scale_re = (re_max - re_min) / width
    cdef double scale_im = (im_max - im_min) / height
    cdef double rho2 = contraction_radius * contraction_radius
    cdef double esc2 = escape_radius * escape_radius

    cdef int r, c, step, guard
    cdef double x, y, d2, u, v, us, factor, kern
    cdef unsigned char st
    cdef int sused
    cdef bint accumulating

    with nogil:
        for r in range(row_count):
            for c in range(width):
                x = re_min + (c + 0.5) * scale_re
                y = im_max - ((row_start + r) + 0.5) * scale_im
                st = 0
                sused = max_steps
                kern = 1.0
                accumulating = want_kernel
                for step in range(max_steps + 1):
                    d2 = x * x + y * y
                    if d2 < rho2:
                        st = 1
                        sused = step
                        break
                    if d2 > esc2:
                        st = 2
                        sused = step
                        break
                    if step == max_steps:
                        break
                    if accumulating:
                        factor = 1.0 + d2
                        if factor == 1.0:
                            accumulating = False
                        else:
                            kern = kern * factor
                    u = x * x - y * y
                    v = 2.0 * (x * y)
                    us = u - 2.0
                    x = u * us - v * v
                    y = u * v + v * us
                status[r, c] = st
                steps[r, c] = sused
                if want_kernel:
                    if st != 1:
                        kernel[r, c] = 0.0
                    else:
                        # factor at the decision point, then the tail
                        guard = 0
                        while accumulating and guard < _TAIL_GUARD:
                            d2 = x * x + y * y
                            factor = 1.0 + d2
                            if factor == 1.0:
                                accumulating = False
                                break
                            kern = kern * factor
                            u = x * x - y * y
                            v = 2.0 * (x * y)
                            us = u - 2.0
                            x = u * us - v * v
                            y = u * v + v * us
                            guard = guard + 1
                        kernel[r, c] = kern

    return status_arr, steps_arr, kernel_arr
