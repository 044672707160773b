"""Benchmark: compiled kernels vs the pure-Python twin.

Times the operations that dominate region computation — projecting a cloud
onto many directions, ranking the projections, and evaluating the pinball
loss — plus one end-to-end planar Tukey region solve per backend.

Run:  python benchmarks/kernel_bench.py
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from conequant import _kernels_py

try:
    from conequant import _kernels
except ImportError:
    _kernels = None


def make_workload(rng: random.Random, n_points: int, dim: int, n_dirs: int):
    xnums = [tuple(rng.randint(-50, 50) for _ in range(dim)) for _ in range(n_points)]
    xdens = [rng.choice((1, 1, 2, 3)) for _ in range(n_points)]
    dirs = []
    for _ in range(n_dirs):
        w = [rng.randint(-30, 30) for _ in range(dim)]
        if not any(w):
            w[0] = 1
        dirs.append((w, rng.randint(1, 6)))
    return xnums, xdens, dirs


def scalarization_sweep(impl, workload, pnum, pden, k):
    xnums, xdens, dirs = workload
    acc = 0
    for wnums, wden in dirs:
        nums, dens = impl.proj_pairs(xnums, xdens, wnums, wden)
        tn, td, gn, gd = impl.scalar_summary(nums, dens, pnum, pden, k)
        acc += impl.count_le(nums, dens, tn, td)
    return acc


def time_call(fn, repeats=5):
    best = None
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def bench_kernels() -> None:
    rng = random.Random(2024)
    workload = make_workload(rng, n_points=200, dim=3, n_dirs=400)
    k = 83
    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("cython", _kernels))
    print(f"{'kernel sweep (200 pts x 400 dirs)':<42}{'best of 5':>12}")
    results = {}
    for name, impl in backends:
        dt, out = time_call(lambda impl=impl: scalarization_sweep(impl, workload, 2, 5, k))
        results[name] = (dt, out)
        print(f"  {name:<40}{dt * 1000:>10.1f}ms")
    if len(results) == 2:
        assert results["python"][1] == results["cython"][1], "backends disagree"
        print(f"  speedup: {results['python'][0] / results['cython'][0]:.2f}x")


def bench_end_to_end() -> None:
    import os
    import subprocess
    import sys

    code = (
        "import random, time\n"
        "from fractions import Fraction as F\n"
        "import conequant as cq\n"
        "from conequant import kernels\n"
        "rng = random.Random(99)\n"
        "pts = [[rng.randint(-20, 20), rng.randint(-20, 20)] for _ in range(14)]\n"
        "X = cq.DataCloud.from_rows(pts)\n"
        "lvl = cq.QuantileLevel(F(5, 28), 14)\n"
        "cq.tukey_region(X, lvl)  # warm up\n"
        "t0 = time.perf_counter()\n"
        "for _ in range(10):\n"
        "    cq.tukey_region(X, lvl)\n"
        "dt = (time.perf_counter() - t0) / 10\n"
        "print(f'  {kernels.BACKEND:<40}{dt * 1000:>10.1f}ms')\n"
    )
    print("\nend-to-end planar depth region (N=14, mean of 10)", flush=True)
    for env_val in ("", "1"):
        env = dict(os.environ)
        if env_val:
            env["CONEQUANT_PURE_PYTHON"] = env_val
        else:
            env.pop("CONEQUANT_PURE_PYTHON", None)
        subprocess.run([sys.executable, "-c", code], env=env, check=True)


if __name__ == "__main__":
    bench_kernels()
    bench_end_to_end()
