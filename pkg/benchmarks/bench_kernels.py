#!/usr/bin/env python3
"""Compare the compiled and pure kernel backends on the workloads that
dominate verification: isotropic-subspace enumeration and bulk subspace
products.

Usage: python benchmarks/bench_kernels.py [--heavy] [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from polardesign._backend import load_backend
from polardesign.counting import polar_count
from polardesign.geometry import rref_space_reps, standard_polar_space


def enumerate_with(kern, space, k):
    """Minimal level driver bound to one kernel module (bypasses the cache)."""
    f = space.field
    kind, gram, quad, conj = space.form.kernel_pack()
    level = [b""]
    for j in range(k):
        raw = kern.extend_level(
            b"".join(level),
            len(level),
            j,
            space.d,
            f.order,
            f.add_table,
            f.mul_table,
            f.neg_table,
            f.inv_table,
            kind,
            gram,
            quad,
            conj,
        )
        sz = (j + 1) * space.d
        level = sorted({raw[i * sz : (i + 1) * sz] for i in range(len(raw) // sz)})
    return level


def products_with(kern, space, k, t):
    f = space.field
    reps = rref_space_reps(t, k, f.order)
    joined = b"".join(reps)
    total = 0
    for mat in enumerate_with(kern, space, k):
        out = kern.products(
            joined, len(reps), t, k, mat, space.d, f.order, f.add_table, f.mul_table
        )
        total += len(out)
    return total


def time_best(fn, repeat):
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--heavy", action="store_true", help="include the 38k-generator Hermitian instance")
    parser.add_argument("--repeat", type=int, default=1)
    args = parser.parse_args()

    pure = load_backend("pure")
    try:
        compiled = load_backend("compiled")
    except ImportError:
        compiled = None
        print("compiled backend not built; timing the pure backend only\n")

    workloads = [
        ("enumerate C_3 q=2, all generators", ("C", 3, 2), 3, None),
        ("enumerate B_3 q=3, all generators", ("B", 3, 3), 3, None),
        ("enumerate 2A-odd_3 q=2, all generators", ("2A-odd", 3, 2), 3, None),
        ("products  C_3 q=2, point sets of all generators", ("C", 3, 2), 3, 1),
    ]
    if args.heavy:
        workloads.append(("enumerate 2A-even_3 q=2, all generators", ("2A-even", 3, 2), 3, None))

    header = f"{'workload':<50} {'pure':>10} {'compiled':>10} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, (family, n, q), k, t in workloads:
        space = standard_polar_space(family, n, q)
        expected = polar_count(space, k)
        if t is None:
            run_pure = lambda: len(enumerate_with(pure, space, k))
            run_fast = lambda: len(enumerate_with(compiled, space, k))
        else:
            run_pure = lambda: products_with(pure, space, k, t)
            run_fast = lambda: products_with(compiled, space, k, t)
        t_pure, got = time_best(run_pure, args.repeat)
        if t is None and got != expected:
            raise AssertionError(f"{label}: pure backend returned {got}, want {expected}")
        if compiled is None:
            print(f"{label:<50} {t_pure:>9.3f}s {'-':>10} {'-':>9}")
            continue
        t_fast, got_fast = time_best(run_fast, args.repeat)
        if t is None and got_fast != expected:
            raise AssertionError(f"{label}: compiled backend returned {got_fast}, want {expected}")
        if got_fast != got:
            raise AssertionError(f"{label}: backends disagree")
        print(f"{label:<50} {t_pure:>9.3f}s {t_fast:>9.3f}s {t_pure / t_fast:>8.1f}x")


if __name__ == "__main__":
    main()
