"""Timing comparison of the two interchangeable search-kernel backends.

Runs the same exhaustive box census (and optionally an optimal-coefficient
sweep) under the JIT-compiled numba kernels and the pure-numpy kernels,
verifies the results are identical, and reports wall times and speedup.

Usage:
    python benchmarks/bench_backends.py [--degree 6] [--cap 8]
        [--trials 3] [--threads 1] [--with-c-search]
"""

from __future__ import annotations

import argparse
import contextlib
import os
import time

from hurwitzint import backend
from hurwitzint.optsearch import count_stable_in_box, search_c_optimal


@contextlib.contextmanager
def use_backend(name: str):
    old = os.environ.get(backend.ENV_VAR)
    os.environ[backend.ENV_VAR] = name
    try:
        yield
    finally:
        if old is None:
            os.environ.pop(backend.ENV_VAR, None)
        else:
            os.environ[backend.ENV_VAR] = old


def timed(fn, trials: int):
    best, result = None, None
    for _ in range(trials):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, default=6)
    ap.add_argument("--cap", type=int, default=8,
                    help="census box bound (candidates = cap^(degree+1))")
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1,
                    help="worker threads for the numba backend")
    ap.add_argument("--with-c-search", action="store_true",
                    help="also time a c-optimal sweep at the same cap")
    args = ap.parse_args()

    candidates = args.cap ** (args.degree + 1)
    print(f"census: degree {args.degree}, coefficients 1..{args.cap} "
          f"({candidates:,} candidates), best of {args.trials}")

    rows = []
    results = {}
    for name in backend.BACKENDS:
        with use_backend(name):
            threads = backend.set_search_threads(args.threads)
            # warm up JIT compilation outside the timed region
            count_stable_in_box(args.degree, 2)
            dt, res = timed(
                lambda: count_stable_in_box(args.degree, args.cap),
                args.trials)
            rows.append((name, threads, dt, candidates / dt))
            results[name] = (res.count, res.candidates_tested)

    if results["numba"] != results["numpy"]:
        raise SystemExit(f"backend mismatch: {results}")

    count = results["numba"][0]
    print(f"stable polynomials found: {count}")
    print(f"{'backend':8s} {'threads':>7s} {'seconds':>9s} {'cand/s':>12s}")
    for name, threads, dt, rate in rows:
        print(f"{name:8s} {threads:7d} {dt:9.3f} {rate:12,.0f}")
    base = rows[1][2]  # numpy
    print(f"speedup (numpy/numba): {base / rows[0][2]:.1f}x")

    if args.with_c_search:
        print(f"\nc-optimal sweep: degree {args.degree}, cap {args.cap}")
        sweeps = {}
        for name in backend.BACKENDS:
            with use_backend(name):
                backend.set_search_threads(args.threads)
                dt, res = timed(
                    lambda: search_c_optimal(args.degree, args.cap),
                    args.trials)
                sweeps[name] = (res.optimum, res.candidates_tested)
                print(f"{name:8s} optimum={res.optimum} "
                      f"tested={res.candidates_tested:,} {dt:9.3f}s")
        if sweeps["numba"] != sweeps["numpy"]:
            raise SystemExit(f"backend mismatch: {sweeps}")


if __name__ == "__main__":
    main()
