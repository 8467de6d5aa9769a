#!/usr/bin/env python3
"""Time the numba kernels against the numpy / pure-Python fallbacks.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--quick]

Each kernel is called once per implementation to warm up (this also
triggers JIT compilation), then timed over ``--repeat`` runs; results of
both implementations are checked for exact equality.
"""
import argparse
import time

import numpy as np

from maxnumrange import kernels, oracle, single
from maxnumrange.isometry import adjacency_graph


def family_args(A, k, limit=10 ** 7):
    V, lo_key, hi_idx = single._value_tables(A)
    adj = np.array(adjacency_graph(A).masks, dtype=np.int64)
    return adj, lo_key, hi_idx, A.shape[0], k, limit, 2 * len(V), len(V)


def cases(quick: bool):
    rng = np.random.default_rng(2024)
    n_sub = 10 if quick else 14
    n_fam = 9 if quick else 11
    n_perm = 8 if quick else 9
    A_sub = oracle.random_rational_matrix(rng, n_sub, zero_p=0.5)
    A_fam = oracle.random_int_matrix(rng, n_fam, zero_p=0.75)
    D = rng.integers(0, 20, (2, n_perm)).astype(float)
    c = rng.integers(0, 9, n_perm).astype(float)
    As = np.stack([oracle.random_int_matrix(rng, n_perm) for _ in range(2)])
    C = oracle.random_int_matrix(rng, n_perm)
    Asub = np.stack([oracle.random_rational_matrix(rng, 3) for _ in range(2)])
    X = rng.random((200_000, 3))
    return [
        (f"subset_tables n={n_sub}", "subset_tables", (A_sub,)),
        (f"family_table n={n_fam} k=3", "family_table", family_args(A_fam, 3)),
        (f"perm_c_points n={n_perm}", "perm_c_points", (D, c)),
        (f"perm_C_points n={n_perm}", "perm_C_points", (As, C)),
        ("column_values 2e5 cols, m=2", "column_values", (Asub, X)),
    ]


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def timed(fn, args, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller problem sizes")
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'kernel':<28}{'numba (s)':>12}{'fallback (s)':>14}{'speedup':>10}  equal")
    for label, name, inputs in cases(args.quick):
        fast = getattr(kernels.numba_impl, name)
        slow = getattr(kernels.numpy_impl, name)
        fast(*inputs)  # compile
        t_fast, r_fast = timed(fast, inputs, args.repeat)
        t_slow, r_slow = timed(slow, inputs, max(1, args.repeat // 3))
        ok = same(r_fast, r_slow)
        print(f"{label:<28}{t_fast:>12.4f}{t_slow:>14.4f}{t_slow / t_fast:>9.1f}x  {ok}")
        if not ok:
            raise SystemExit(f"{name}: implementations disagree")


if __name__ == "__main__":
    main()
