"""Compare the numba kernels with their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat R]

The first numba call of each kernel is timed separately (compile or cache load).
"""
import argparse
import time

import numpy as np

from polyshadow import kernels
from polyshadow._backend import HAS_NUMBA
from polyshadow.linalg import rng_from
from polyshadow.oracle import standard_body


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    rng = rng_from(0)
    pts = standard_body("cube", 6).vertices[:, :5] @ np.linalg.qr(rng.standard_normal((5, 5)))[0]
    queries = rng.uniform(-1.5, 1.5, (5_000, 5))
    a = rng.standard_normal(18)
    starts = rng.standard_normal((50, 9))
    args = (starts, kernels.OBJ_L1, kernels.CON_ZERO_SUM, 9, 1.0, 1.0, 0.5, 1.5, 1e-10, 10_000)
    return [
        ("hull LP, 64 pts in R^5, 5000 queries",
         lambda: kernels._nb_hull_residuals(pts, queries, 500),
         lambda: kernels._np_hull_residuals(pts, queries, 500)),
        ("sign moment, n=18",
         lambda: kernels._nb_sign_moment_exact(a, 1.5),
         lambda: kernels._np_sign_moment_exact(a, 1.5)),
        ("projected search, m=9, 50 restarts",
         lambda: kernels._nb_search(*args),
         lambda: kernels._np_search(*args)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not HAS_NUMBA:
        print("numba is not installed (or disabled); timing the numpy path only")
    print(f"{'kernel':40s} {'numba first':>12s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, nb, np_ in cases():
        t_np = best_of(np_, args.repeat)
        if HAS_NUMBA:
            first = best_of(nb, 1)
            t_nb = best_of(nb, args.repeat)
            print(f"{name:40s} {first:12.4f} {t_nb:10.4f} {t_np:10.4f} {t_np / t_nb:8.1f}x")
        else:
            print(f"{name:40s} {'-':>12s} {'-':>10s} {t_np:10.4f} {'-':>8s}")


if __name__ == "__main__":
    main()
