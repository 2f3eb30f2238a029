"""Benchmark the numba and pure-numpy implementations of the hot kernels.

Usage:
    python3 benchmarks/bench_kernels.py [--n 1000000] [--repeats 5]

Times the batch qubit-relation-gap kernel and the triangle-analog kernel on
identical inputs under both backends and prints the speedup. The numba
timings exclude JIT compilation (one warmup call per kernel).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from triplespin import kernels
from triplespin.states import random_pure_bloch
from triplespin.triangle import sample_barycentric


def best_time(fn, *args, repeats: int) -> float:
    fn(*args)  # warmup; compiles the numba path
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=1_000_000, help="batch size")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    bloch = random_pure_bloch(args.n, seed=0)
    bary = sample_barycentric(args.n, seed=1)

    cases = [
        ("qubit relation gaps", kernels._qubit_gaps_numpy, (bloch,)),
        ("triangle analog gaps", kernels._triangle_gaps_numpy, (bary, 1.0)),
    ]
    numba_impls = {}
    if kernels.HAVE_NUMBA:
        numba_impls = {
            "qubit relation gaps": (kernels._qubit_gaps_numba, (bloch,)),
            "triangle analog gaps": (kernels._triangle_gaps_numba, (bary, 1.0)),
        }

    print(f"batch size {args.n}, best of {args.repeats} runs")
    print(f"{'kernel':<24} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}")
    for name, numpy_fn, fn_args in cases:
        t_numpy = best_time(numpy_fn, *fn_args, repeats=args.repeats)
        if name in numba_impls:
            numba_fn, nb_args = numba_impls[name]
            t_numba = best_time(numba_fn, *nb_args, repeats=args.repeats)
            np.testing.assert_allclose(numba_fn(*nb_args), numpy_fn(*fn_args), atol=1e-13, rtol=0)
            print(f"{name:<24} {1e3 * t_numpy:>12.2f} {1e3 * t_numba:>12.2f} {t_numpy / t_numba:>8.1f}x")
        else:
            print(f"{name:<24} {1e3 * t_numpy:>12.2f} {'n/a':>12} {'n/a':>9}")


if __name__ == "__main__":
    main()
