#!/usr/bin/env python3
"""Benchmark the compiled de Casteljau kernel against the numpy fallback.

Both backends share the same convex-combination recurrence; the compiled
one runs the O(n^2) triangle per point in C with the GIL released, the
fallback vectorizes one layer at a time across all points.  Run after an
editable install:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --degrees 64,512 --points 16385
"""

import argparse
import time

import numpy as np

import bernint._kernels_py as kernels_py

try:
    import bernint._decasteljau as compiled
except ImportError:
    compiled = None


def time_call(fn, coeffs, xs, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(coeffs, xs)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degrees", default="16,64,256,512", help="comma-separated n values")
    ap.add_argument("--points", type=int, default=4097, help="evaluation points")
    ap.add_argument("--repeats", type=int, default=5, help="timing repeats (best-of)")
    args = ap.parse_args()

    degrees = [int(v) for v in args.degrees.split(",")]
    rng = np.random.default_rng(0)
    xs = np.linspace(0.0, 1.0, args.points)

    if compiled is None:
        print("compiled extension not available; timing fallback only")
    print(f"{'n':>6} {'points':>8} {'numpy (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for n in degrees:
        coeffs = rng.standard_normal(n + 1)
        t_py = time_call(kernels_py.decasteljau_batch, coeffs, xs, args.repeats)
        if compiled is not None:
            t_c = time_call(compiled.decasteljau_batch, coeffs, xs, args.repeats)
            a = compiled.decasteljau_batch(coeffs, xs)
            b = kernels_py.decasteljau_batch(coeffs, xs)
            assert np.allclose(a, b, atol=1e-12), "backends disagree"
            print(
                f"{n:>6} {args.points:>8} {t_py * 1e3:>12.3f} {t_c * 1e3:>12.3f} "
                f"{t_py / t_c:>7.1f}x"
            )
        else:
            print(f"{n:>6} {args.points:>8} {t_py * 1e3:>12.3f} {'-':>12} {'-':>8}")


if __name__ == "__main__":
    main()
