#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the two hot kernels on representative workloads (weight-quotient
products over quadrature nodes, Laurent sums over quadrature nodes) and an
end-to-end orthogonality check.  Both implementations are imported directly,
so a single run compares them regardless of the QORTHO_NUMBA setting; the
end-to-end row uses whichever backend the environment selected.

Usage:
    python benchmarks/bench_kernels.py [--nodes 4096] [--repeats 50]
"""

import argparse
import time

import numpy as np

from qortho import kernels
from qortho.qfun import ParamSet4, big_c_coeffs
from qortho.verify import check_thm_1_1


def timeit(fn, repeats):
    fn()  # warm up (JIT compile, cache touch)
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - t0) / repeats


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nodes", type=int, default=4096)
    parser.add_argument("--repeats", type=int, default=50)
    args = parser.parse_args()

    print(f"backend selected by environment: {kernels.BACKEND}")
    print(f"nodes={args.nodes} repeats={args.repeats}")
    print()

    thetas = 2 * np.pi * np.arange(args.nodes) / args.nodes
    q = 0.5 + 0.0j

    # weight-quotient workload: 4 product symbols, ~110 factors each
    coefs = np.array([0.8 / 0.9, 0.9 / 0.8, 0.2 / 0.9, 0.1 / 0.8], dtype=np.complex128)
    exps = np.array([2, -2, 2, -2], dtype=np.int64)
    kmax = 110

    rows = []
    t_np = timeit(lambda: kernels.poch_product_many_numpy(coefs, exps, q, kmax, thetas),
                  args.repeats)
    rows.append(("poch_product_many", "numpy", t_np))
    if hasattr(kernels, "poch_product_many_numba"):
        t_nb = timeit(lambda: kernels.poch_product_many_numba(coefs, exps, q, kmax, thetas),
                      args.repeats)
        rows.append(("poch_product_many", "numba", t_nb))

    # Laurent-sum workload: degree-12 coefficients
    p = ParamSet4(0.2, 0.1, 0.8, 0.9)
    lc = big_c_coeffs(12, p, 0.5)
    t_np = timeit(lambda: kernels.laurent_eval_numpy(lc, 12, thetas), args.repeats)
    rows.append(("laurent_eval", "numpy", t_np))
    if hasattr(kernels, "laurent_eval_numba"):
        t_nb = timeit(lambda: kernels.laurent_eval_numba(lc, 12, thetas), args.repeats)
        rows.append(("laurent_eval", "numba", t_nb))

    # end-to-end: one full-period orthogonality check (selected backend)
    t_e2e = timeit(lambda: check_thm_1_1(p, 0.5, 4, 4), max(args.repeats // 10, 3))
    rows.append(("check_thm_1_1 (end-to-end)", kernels.BACKEND, t_e2e))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'path':<6}  {'time/call':>12}")
    print("-" * (width + 24))
    for name, path, t in rows:
        print(f"{name:<{width}}  {path:<6}  {t * 1e3:>10.3f} ms")

    # cross-check both paths produce the same numbers
    ref = kernels.poch_product_many_numpy(coefs, exps, q, kmax, thetas)
    if hasattr(kernels, "poch_product_many_numba"):
        alt = kernels.poch_product_many_numba(coefs, exps, q, kmax, thetas)
        print(f"\nmax |numba - numpy| (products): {np.max(np.abs(ref - alt)):.3e}")
        ref_l = kernels.laurent_eval_numpy(lc, 12, thetas)
        alt_l = kernels.laurent_eval_numba(lc, 12, thetas)
        print(f"max |numba - numpy| (laurent):  {np.max(np.abs(ref_l - alt_l)):.3e}")


if __name__ == "__main__":
    main()
