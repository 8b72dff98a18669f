"""Timing comparison of the neighbor-counting backends.

Runs the spatial-hash kernel (compiled extension if built, pure-numpy
fallback otherwise), forces the pure path for comparison, and times the
O(n^2) reference counter on the smaller clouds.  All three must agree
exactly; the table reports wall times.

Usage: python3 benchmarks/bench_kernels.py [--sizes 2000,10000,50000]
"""

import argparse
import time

import numpy as np

from dynadim._neighbors import BACKEND, naive_neighbor_counts, neighbor_counts

NAIVE_CAP = 20000  # n^2 reference gets slow past this


def _time(fn, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def bench(sizes, eps, dim, seed=0):
    rng = np.random.default_rng(seed)
    print(f"default backend: {BACKEND}")
    print(f"{'n':>8} {'dim':>3} {'eps':>8} {'default':>10} {'pure':>10} {'naive':>10}  agree")
    for n in sizes:
        pts = rng.random((n, dim))
        fast, t_fast = _time(lambda: neighbor_counts(pts, eps))
        pure, t_pure = _time(lambda: neighbor_counts(pts, eps, backend="python"))
        if n <= NAIVE_CAP:
            ref, t_ref = _time(lambda: naive_neighbor_counts(pts, eps), repeats=1)
            ref_s = f"{t_ref:9.3f}s"
            ok = bool(np.array_equal(fast, ref) and np.array_equal(pure, ref))
        else:
            ref_s = f"{'skipped':>10}"
            ok = bool(np.array_equal(fast, pure))
        print(f"{n:>8} {dim:>3} {eps:>8.4f} {t_fast:9.3f}s {t_pure:9.3f}s {ref_s}  {ok}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="2000,10000,50000")
    ap.add_argument("--eps", type=float, default=1 / 64)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    for dim in (1, 2):
        bench(sizes, args.eps, dim, args.seed)
        print()


if __name__ == "__main__":
    main()
