"""Compare the compiled kernel against the pure-Python fallback.

Run from the repository root:

    python benchmarks/bench_kernel.py
    python benchmarks/bench_kernel.py --images 20000 --scan-n 5

Both backends are imported directly, so the SKEWLIE_BACKEND switch does
not matter here.  The last column is the speedup of the compiled kernel.
"""

import argparse
import random
import time

from skewlie._kernel import _kernel_py

try:
    from skewlie._kernel import _fastkernel
except ImportError:
    _fastkernel = None


def packed(n, p, rng):
    size = n * (n - 1) // 2
    return tuple(rng.randrange(p) for _ in range(size))


def time_call(fn, *args, repeat=1):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def bench_images(kern, n, p, inputs):
    t0 = time.perf_counter()
    for a, x in inputs:
        kern.deriv_image(n, p, a, x)
    return time.perf_counter() - t0


def bench_block(kern, n, p, inputs):
    t0 = time.perf_counter()
    for a, x in inputs:
        kern.block_image(n, p, a, x)
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--images", type=int, default=50000,
                    help="number of derivation images per backend (default 50000)")
    ap.add_argument("--n", type=int, default=4, help="matrix dimension for image ops")
    ap.add_argument("--p", type=int, default=5, help="prime modulus")
    ap.add_argument("--scan-n", type=int, default=4,
                    help="dimension for the exhaustive scans (default 4)")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if _fastkernel is None:
        print("compiled kernel not built; showing the fallback only")
    rng = random.Random(args.seed)
    inputs = [(packed(args.n, args.p, rng), packed(args.n, args.p, rng))
              for _ in range(args.images)]

    rows = []

    py = bench_images(_kernel_py, args.n, args.p, inputs)
    c = bench_images(_fastkernel, args.n, args.p, inputs) if _fastkernel else None
    rows.append((f"deriv_image x{args.images} (n={args.n}, p={args.p})", py, c))

    py = bench_block(_kernel_py, args.n, args.p, inputs)
    c = bench_block(_fastkernel, args.n, args.p, inputs) if _fastkernel else None
    rows.append((f"block_image x{args.images} (n={args.n}, p={args.p})", py, c))

    sn = args.scan_n
    py = time_call(_kernel_py.extraction_scan, sn, 3)
    c = time_call(_fastkernel.extraction_scan, sn, 3) if _fastkernel else None
    rows.append((f"extraction_scan (n={sn}, p=3)", py, c))

    py = time_call(_kernel_py.agreement_zero_scan, sn, 3)
    c = time_call(_fastkernel.agreement_zero_scan, sn, 3) if _fastkernel else None
    rows.append((f"agreement_zero_scan (n={sn}, p=3)", py, c))

    x = packed(4, 3, rng)
    dx = tuple(0 for _ in x)
    py = time_call(_kernel_py.witness_scan, 4, 3, x, dx, repeat=3)
    c = time_call(_fastkernel.witness_scan, 4, 3, x, dx, repeat=3) if _fastkernel else None
    rows.append(("witness_scan (n=4, p=3, zero target)", py, c))

    width = max(len(r[0]) for r in rows)
    header = f"{'operation':<{width}}  {'python':>10}  {'c':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, py, c in rows:
        if c is None:
            print(f"{label:<{width}}  {py:>9.4f}s  {'n/a':>10}  {'n/a':>8}")
        else:
            print(f"{label:<{width}}  {py:>9.4f}s  {c:>9.4f}s  {py / c:>7.1f}x")


if __name__ == "__main__":
    main()
