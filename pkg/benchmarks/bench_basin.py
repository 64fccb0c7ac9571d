#!/usr/bin/env python3
"""Throughput comparison of the grid-classifier backends.

The orbit loop over pixel grids is the package's hot path (basin rendering
and classifier sweeps); everything else is small-sample verification.
This script times the numpy fallback against the compiled extension on the
same rectangle and reports pixels/second, plus a scalar-loop reference so
the vectorisation payoff is visible.

Usage: python benchmarks/bench_basin.py [--size 512] [--max-iter 300] [--repeat 3]
"""

import argparse
import time

import numpy as np

from prodkern import _basin
from prodkern.iteration import classify_orbit
from prodkern.julia import julia_map

RECT = (-2.0, 2.0, -2.0, 2.0)


def time_backend(name: str, size: int, max_iter: int, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        _basin.classify_block(
            *RECT, size, size, 0, size, max_iter, 1.0 / 3.0, 2.0, False, backend=name
        )
        best = min(best, time.perf_counter() - start)
    return best


def time_scalar(size: int, max_iter: int) -> float:
    mapping = julia_map()
    scale = 4.0 / size
    start = time.perf_counter()
    for r in range(size):
        for c in range(size):
            classify_orbit(mapping, complex(-2.0 + (c + 0.5) * scale, 2.0 - (r + 0.5) * scale), max_iter)
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=512)
    parser.add_argument("--max-iter", type=int, default=300)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--scalar-size", type=int, default=96,
                        help="grid edge for the pure scalar reference loop")
    args = parser.parse_args()

    pixels = args.size * args.size
    results = {}
    for name in sorted(_basin.available_backends()):
        seconds = time_backend(name, args.size, args.max_iter, args.repeat)
        results[name] = seconds
        print(f"{name:10s} {args.size}x{args.size} @ {args.max_iter} iter: "
              f"{seconds * 1e3:8.1f} ms   {pixels / seconds / 1e6:7.2f} Mpix/s")

    scalar_seconds = time_scalar(args.scalar_size, args.max_iter)
    scalar_rate = args.scalar_size**2 / scalar_seconds
    print(f"{'scalar':10s} {args.scalar_size}x{args.scalar_size} @ {args.max_iter} iter: "
          f"{scalar_seconds * 1e3:8.1f} ms   {scalar_rate / 1e6:7.2f} Mpix/s")

    if "compiled" in results:
        print(f"\ncompiled vs python speedup: {results['python'] / results['compiled']:.1f}x")
        check_py = _basin.classify_block(*RECT, 128, 128, 0, 128, args.max_iter,
                                         1.0 / 3.0, 2.0, True, backend="python")
        check_cy = _basin.classify_block(*RECT, 128, 128, 0, 128, args.max_iter,
                                         1.0 / 3.0, 2.0, True, backend="compiled")
        same = all(np.array_equal(a, b) for a, b in zip(check_py, check_cy))
        print(f"backends bit-identical on 128x128 check grid: {same}")


if __name__ == "__main__":
    main()
