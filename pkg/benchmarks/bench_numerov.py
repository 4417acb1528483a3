"""Benchmark: compiled Numerov sweep kernel vs the pure-Python fallback.

Times the raw recurrence on realistic mesh sizes and a full eigenvalue solve
routed through each backend.  Run with:  python benchmarks/bench_numerov.py
"""

import time

import numpy as np

from radial_theorems import _numerov_py, kernels
from radial_theorems.numerov import solve_bound_state
from radial_theorems.potentials import Coulomb, PhysicalParams


def time_call(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernel():
    print(f"active backend: {kernels.BACKEND}")
    rng = np.random.default_rng(1)
    for n in (10_000, 100_000, 1_000_000):
        w = rng.normal(scale=0.1, size=n)
        h = 0.002
        t_py = time_call(_numerov_py.numerov_sweep, w, h, 0.0, 1e-6)
        t_active = time_call(kernels.numerov_sweep, w, h, 0.0, 1e-6)
        a = _numerov_py.numerov_sweep(w, h, 0.0, 1e-6)
        b = kernels.numerov_sweep(w, h, 0.0, 1e-6)
        same = np.allclose(a, b, rtol=1e-13, atol=1e-300, equal_nan=True)
        print(
            f"  n={n:>9,}  python {t_py * 1e3:8.2f} ms"
            f"  {kernels.BACKEND} {t_active * 1e3:8.2f} ms"
            f"  speedup {t_py / t_active:6.1f}x  agree={same}"
        )


def bench_solve():
    params = PhysicalParams()
    V = Coulomb(1.0)

    def solve():
        solve_bound_state(V, 0, 1, params)  # 2s: bisection plus refinement

    t = time_call(solve, repeat=3)
    print(f"full 2s Coulomb solve via {kernels.BACKEND} backend: {t * 1e3:.1f} ms")


if __name__ == "__main__":
    bench_kernel()
    bench_solve()
