#!/usr/bin/env python3
"""Side-by-side timing of the jitted kernels vs the interpreted fallback.

Runs the exhaustive-PNE scan and the history-table backward induction on
growing instances under both backends, checks that the results agree bit for
bit, and prints a table with the speedups.

Usage: python benchmarks/bench_backends.py
"""

import time

import numpy as np

from lazyvote import backend, instances, model


def time_call(fn, *args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_pne_scan(jit, pure):
    print("exhaustive PNE scan over all (m+1)^n ballot vectors")
    print(f"{'n':>3} {'m':>3} {'vectors':>9} {'python (s)':>11} {'numba (s)':>10} {'speedup':>8}")
    for n, m in [(5, 2), (6, 2), (7, 2), (5, 3), (6, 3)]:
        p = instances.random_profile(n, m, seed=n * 100 + m)
        ranks = np.array([model.outcome_ranks(u) for u in p.utilities], np.int32)
        t_jit, r_jit = time_call(jit.pne_scan, n, m, ranks)
        t_pure, r_pure = time_call(pure.pne_scan, n, m, ranks, repeats=1)
        assert r_jit.tolist() == r_pure.tolist(), "backend results diverged"
        print(
            f"{n:>3} {m:>3} {(m + 1) ** n:>9} {t_pure:>11.3f} {t_jit:>10.4f}"
            f" {t_pure / t_jit:>7.1f}x"
        )


def bench_history(jit, pure):
    print("\nhistory-table backward induction over all (m+1)^n histories")
    print(f"{'n':>3} {'m':>3} {'entries':>9} {'python (s)':>11} {'numba (s)':>10} {'speedup':>8}")
    for n, m in [(7, 2), (9, 2), (11, 2), (6, 3), (8, 3)]:
        p = instances.random_profile(n, m, seed=n * 100 + m)
        ranks = np.array([model.outcome_ranks(u) for u in p.utilities], np.int32)
        order = np.arange(n, dtype=np.int64)
        t_jit, r_jit = time_call(jit.history_solve, order, m, ranks)
        t_pure, r_pure = time_call(pure.history_solve, order, m, ranks, repeats=1)
        assert int(r_jit[0]) == int(r_pure[0]), "backend results diverged"
        assert r_jit[1].tolist() == r_pure[1].tolist(), "backend results diverged"
        entries = ((m + 1) ** n - 1) // m
        print(
            f"{n:>3} {m:>3} {entries:>9} {t_pure:>11.3f} {t_jit:>10.4f}"
            f" {t_pure / t_jit:>7.1f}x"
        )


def main():
    jit = backend.kernels(force="numba")
    pure = backend.kernels(force="python")
    print("compiling kernels (cached after the first run)...")
    t0 = time.perf_counter()
    backend.warmup()
    print(f"warmup took {time.perf_counter() - t0:.1f} s\n")
    bench_pne_scan(jit, pure)
    bench_history(jit, pure)


if __name__ == "__main__":
    main()
