#!/usr/bin/env python3
"""Benchmark the compiled pairwise kernels against the numpy fallback.

Usage:
    python benchmarks/bench_kernels.py [--n 4000] [--d 4] [--p 2] [--repeat 3]

The pairwise distortion kernel is the hot loop of the whole package: grid
defect estimation enumerates n(n-1)/2 sample pairs.  The covering kernel is
the max-min reduction used by the covering-defect estimator.
"""

import argparse
import math
import time

import numpy as np

from neariso import _kernels_numpy

try:
    from neariso import _kernels as _compiled
except ImportError:
    _compiled = None


def _time(fn, *args, repeat):
    best = math.inf
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def run(n: int, d: int, p: float, repeat: int) -> None:
    rng = np.random.default_rng(0)
    X = rng.standard_normal((n, d))
    FX = X + 0.05 * rng.standard_normal((n, d))
    Y = rng.standard_normal((n // 4, d))

    print(f"n={n} d={d} p={p}  ({n * (n - 1) // 2} pairs)")
    header = f"{'kernel':<18}{'numpy':>12}{'compiled':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, args, np_fn, c_fn in (
        ("max_pair_defect", (X, FX, p, p), _kernels_numpy.max_pair_defect,
         None if _compiled is None else _compiled.max_pair_defect),
        ("max_min_distance", (Y, FX, p), _kernels_numpy.max_min_distance,
         None if _compiled is None else _compiled.max_min_distance),
    ):
        t_np, r_np = _time(np_fn, *args, repeat=repeat)
        if c_fn is None:
            print(f"{label:<18}{t_np * 1e3:>10.1f}ms{'(not built)':>12}{'-':>10}")
            continue
        t_c, r_c = _time(c_fn, *args, repeat=repeat)
        assert abs(r_np[0] - r_c[0]) <= 1e-12 * max(1.0, abs(r_np[0])), (r_np, r_c)
        print(f"{label:<18}{t_np * 1e3:>10.1f}ms{t_c * 1e3:>10.1f}ms{t_np / t_c:>9.1f}x")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4000)
    ap.add_argument("--d", type=int, default=4)
    ap.add_argument("--p", type=float, default=2.0)
    ap.add_argument("--repeat", type=int, default=3)
    ns = ap.parse_args()
    run(ns.n, ns.d, ns.p, ns.repeat)
