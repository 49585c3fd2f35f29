#!/usr/bin/env python3
"""Benchmark the force-layout kernel: compiled extension vs numpy fallback.

Times fr_steps in both modes the layout engines use: full-pairwise repulsion
(spring layout) and grid-bucketed repulsion (the scalable engines). Before
timing, both implementations are checked for agreement on a single step so
the speedups compare identical work.

Usage:
    python3 benchmarks/bench_layout.py
    python3 benchmarks/bench_layout.py --sizes 50,200,1000 --iters 50 --repeats 5
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from gtrbench._kernels import HAVE_COMPILED, fallback

if HAVE_COMPILED:
    from gtrbench._kernels import _forcelayout


def make_case(n: int, seed: int) -> tuple[np.ndarray, np.ndarray, float, float]:
    """Random positions on the engines' canvas plus a sparse edge set."""
    rng = np.random.default_rng(seed)
    side = 100.0 + 30.0 * math.sqrt(n)
    pos = rng.uniform(0.0, side, size=(n, 2))
    m = 3 * n
    u = rng.integers(0, n, size=m)
    v = rng.integers(0, n, size=m)
    keep = u != v
    edges = np.stack([u[keep], v[keep]], axis=1).astype(np.int64)
    k = math.sqrt(side * side / n)
    return pos, edges, k, 0.1 * side


def check_agreement(pos, edges, k, t0, cell: float) -> float:
    """Max absolute one-step difference between the two implementations."""
    a = fallback.fr_steps(pos, edges, k, t0, 1, cell)
    b = _forcelayout.fr_steps(pos, edges, k, t0, 1, cell)
    return float(np.abs(a - b).max())


def best_time(fn, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="50,100,200,500,1000")
    parser.add_argument("--iters", type=int, default=50)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",") if s]

    if not HAVE_COMPILED:
        print("compiled kernel unavailable; timing the numpy fallback only\n")
    header = f"{'n':>6} {'mode':>6} {'fallback':>12}"
    if HAVE_COMPILED:
        header += f" {'compiled':>12} {'speedup':>9} {'max|diff|':>11}"
    print(header)
    print("-" * len(header))

    for n in sizes:
        pos, edges, k, t0 = make_case(n, args.seed)
        for mode, cell in (("full", 0.0), ("grid", 2.0 * k)):
            run_fb = lambda: fallback.fr_steps(pos, edges, k, t0, args.iters, cell)
            fb = best_time(run_fb, args.repeats)
            row = f"{n:>6} {mode:>6} {fb * 1e3:>10.2f}ms"
            if HAVE_COMPILED:
                diff = check_agreement(pos, edges, k, t0, cell)
                run_c = lambda: _forcelayout.fr_steps(pos, edges, k, t0, args.iters, cell)
                cp = best_time(run_c, args.repeats)
                row += f" {cp * 1e3:>10.2f}ms {fb / cp:>8.1f}x {diff:>11.2e}"
                if diff > 1e-9:
                    print(row)
                    print(f"implementations disagree at n={n} mode={mode}")
                    return 1
            print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
