"""Benchmark the theta-quadrature translation kernel: numba vs pure numpy.

Usage:
    python benchmarks/bench_translate.py [--n 96] [--extent 10] [--repeats 5]

The numba path is JIT-compiled on first use; a warm-up call is timed
separately so the steady-state comparison is fair.
"""

import argparse
import time

import numpy as np

from weinstein import (
    BesselIndex,
    Grid,
    build_plan,
    gaussian_field,
    numba_available,
    set_numba,
    translate_theta,
)


def time_translate(plan, field, shifts, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for x in shifts:
            translate_theta(plan, field, x)
        best = min(best, (time.perf_counter() - t0) / len(shifts))
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=96)
    ap.add_argument("--extent", type=float, default=10.0)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    grid = Grid(1, BesselIndex(0.5), (args.n,), (args.extent,), args.n, args.extent)
    plan = build_plan(grid)
    field = gaussian_field(grid)
    shifts = [np.array([0.5, 1.0]), np.array([-1.2, 0.3]), np.array([2.0, 2.0])]

    set_numba(False)
    t_numpy = time_translate(plan, field, shifts, args.repeats)
    print(f"numpy  : {t_numpy * 1e3:8.2f} ms / translate")

    if not numba_available():
        print("numba  : not available (install numba to compare)")
        return

    set_numba(True)
    t0 = time.perf_counter()
    translate_theta(plan, field, shifts[0])  # triggers JIT compilation
    print(f"numba warm-up (includes JIT): {time.perf_counter() - t0:6.2f} s")
    t_numba = time_translate(plan, field, shifts, args.repeats)
    print(f"numba  : {t_numba * 1e3:8.2f} ms / translate")
    print(f"speedup: {t_numpy / t_numba:6.2f}x")


if __name__ == "__main__":
    main()
