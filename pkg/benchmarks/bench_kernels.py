#!/usr/bin/env python3
"""Benchmark the stabilizer-scan kernels: numba @njit vs pure numpy.

Workloads mirror the real hot paths:
  * filter: one G_D scan against a 3-point set (minimal-base search inner op)
  * detect: non-base detection over many sampled points (Monte-Carlo loop)
  * count:  fixer counts over the whole point set (exact second-moment bound)

Run:  python benchmarks/bench_kernels.py [--repeat N]
The numpy path can also be forced package-wide with DIAGBASE_NO_NUMBA=1.
"""

import argparse
import time

import numpy as np

from diagbase import _accel
from diagbase.catalog import get_group
from diagbase.diag import build_group, omega_iter
from diagbase.prob import prime_order_candidates


def timeit(fn, args, repeat):
    fn(*args)  # warmup (and JIT compile)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def workload_filter():
    T = get_group("A6")
    g = build_group(T, 2, "full", "sym-table")
    perms = g.top.table.arrays().astype(np.int32)
    n_p = len(perms)
    cand_a = np.repeat(g.aut_rows.astype(np.int32), n_p)
    cand_p = np.tile(np.arange(n_p, dtype=np.int32), len(g.aut_rows))
    rng = np.random.default_rng(0)
    tuples = np.zeros((3, 2), dtype=np.int32)
    tuples[:, 1] = rng.integers(0, T.order, 3)
    return ("filter_candidates (A6 k=2, %d candidates, 3 points)"
            % len(cand_a),
            (T.aut.rows, perms, cand_a, cand_p, tuples, T.mul, T.inv),
            _accel.filter_candidates_nb, _accel.filter_candidates_np)


def workload_detect():
    T = get_group("A5")
    g = build_group(T, 37, "full", "cyclic")
    cand_a, cand_p, _tags = prime_order_candidates(g)
    perms = g.top.table.arrays().astype(np.int32)
    rng = np.random.default_rng(1)
    tuples = np.zeros((2000, 37), dtype=np.int32)
    tuples[:, 1:] = rng.integers(0, T.order, (2000, 36))
    return ("detect_per_tuple (A5 k=37, %d candidates, 2000 samples)"
            % len(cand_a),
            (T.aut.rows, perms, cand_a, cand_p, tuples, T.mul, T.inv),
            _accel.detect_per_tuple_nb, _accel.detect_per_tuple_np)


def workload_count():
    T = get_group("A5")
    g = build_group(T, 3, "full", "sym-table")
    cand_a, cand_p, _tags = prime_order_candidates(g)
    perms = g.top.table.arrays().astype(np.int32)
    tuples = _accel.as_tuple_matrix(
        [p.as_array() for p in omega_iter(g)], 3)
    return ("count_per_tuple (A5 k=3, %d candidates, %d points)"
            % (len(cand_a), len(tuples)),
            (T.aut.rows, perms, cand_a, cand_p, tuples, T.mul, T.inv),
            _accel.count_per_tuple_nb, _accel.count_per_tuple_np)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    print(f"numba available in this process: {_accel.NUMBA_ENABLED}")
    print(f"{'workload':64s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for builder in (workload_filter, workload_detect, workload_count):
        label, inputs, fn_nb, fn_np = builder()
        t_np = timeit(fn_np, inputs, args.repeat)
        if _accel.NUMBA_ENABLED:
            t_nb = timeit(fn_nb, inputs, args.repeat)
            ratio = t_np / t_nb if t_nb > 0 else float("inf")
            print(f"{label:64s} {t_nb * 1e3:8.2f}ms {t_np * 1e3:8.2f}ms "
                  f"{ratio:7.1f}x")
        else:
            print(f"{label:64s} {'n/a':>10s} {t_np * 1e3:8.2f}ms")
        out_np = fn_np(*inputs)
        out_nb = fn_nb(*inputs)
        assert np.array_equal(out_np, out_nb), "paths disagree!"
    print("all outputs identical across paths")


if __name__ == "__main__":
    main()
