#!/usr/bin/env python3
"""Throughput comparison of the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from blindreset._kernels import implementations


def time_call(fn, *args, repeats=5, inner=1):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for _ in range(inner):
            fn(*args)
        best = min(best, (time.perf_counter() - start) / inner)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    impls = implementations()
    if "compiled" not in impls:
        print("compiled kernels not built; nothing to compare")

    cases = []

    axes20 = rng.integers(0, 3, size=20).astype(np.int64)
    angles20 = rng.uniform(0, 2 * np.pi, size=20)
    cases.append(("compose L=20", "compose_rotations", (axes20, angles20, 1.0), 200))

    lams40 = np.linspace(0.1, 4.0, 40)
    lams200 = np.linspace(0.1, 4.0, 200)
    cases.append(("lambda sweep L=20 x40", "lambda_residuals", (axes20, angles20, lams40), 50))
    cases.append(("lambda sweep L=20 x200", "lambda_residuals", (axes20, angles20, lams200), 20))

    rows = (rng.random((20, 4)) < 0.12).astype(np.uint8)
    diffs = rows.copy()
    diffs[1:] ^= rows[:-1]
    ts, xs = np.nonzero(diffs)
    cases.append((f"matching d=5 ({len(ts)} defects)", "match_defects",
                  (ts.astype(np.int64), xs.astype(np.int64), 5), 50))

    print(f"{'case':<28} " + " ".join(f"{name:>12}" for name in impls) +
          ("  speedup" if len(impls) > 1 else ""))
    for label, fn_name, fn_args, inner in cases:
        times = {}
        for name, impl in impls.items():
            times[name] = time_call(getattr(impl, fn_name), *fn_args,
                                    repeats=args.repeats, inner=inner)
        line = f"{label:<28} " + " ".join(f"{times[name] * 1e6:>10.1f}us" for name in impls)
        if "compiled" in times and "python" in times:
            line += f"  {times['python'] / times['compiled']:>6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
