#!/usr/bin/env python3
"""Benchmark the compiled Laurent-polynomial kernels against the pure
Python fallback on the workloads the verification suites actually run:
dense Laurent multiplication, polynomial gcd, and a full relation-family
verification driven through each backend.

Usage: python3 benchmarks/bench_kernels.py [--repeat R] [--n N]
"""

import argparse
import random
import subprocess
import sys
import time
from fractions import Fraction

from qso_spectra import _kernels_py as py

try:
    from qso_spectra import _kernels as c
except ImportError:
    c = None


def random_laurent(rng, size, span=12):
    out = {}
    while len(out) < size:
        out[rng.randint(-span, span)] = Fraction(
            rng.randint(-50, 50) or 1, rng.randint(1, 9))
    return out


def random_dense(rng, size):
    p = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(size)]
    p[-1] = p[-1] or Fraction(1)
    return p


def bench(label, fn, repeat):
    best = min(timeit(fn) for _ in range(repeat))
    print(f"  {label:<28s} {best * 1000:9.3f} ms")
    return best


def timeit(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def kernel_micro(mod, rng_seed, repeat):
    rng = random.Random(rng_seed)
    pairs = [(random_laurent(rng, 8), random_laurent(rng, 8))
             for _ in range(400)]
    dense_pairs = [(random_dense(rng, 14), random_dense(rng, 7))
                   for _ in range(60)]

    out = {}
    out["lp_mul"] = bench("lp_mul x400", lambda: [
        mod.lp_mul(a, b) for a, b in pairs], repeat)
    out["lp_add"] = bench("lp_add x400", lambda: [
        mod.lp_add(a, b) for a, b in pairs], repeat)
    out["divmod"] = bench("plist_divmod x60", lambda: [
        mod.plist_divmod(a, b) for a, b in dense_pairs], repeat)
    out["gcd"] = bench("plist_gcd x60", lambda: [
        mod.plist_gcd(a, b) for a, b in dense_pairs], repeat)
    return out


def end_to_end(backend, n):
    """Run a relation verification in a subprocess pinned to a backend."""
    code = ("import time,qso_spectra.frt as f;"
            "t0=time.perf_counter();f.verify_lemma_rels(%d);"
            "print(time.perf_counter()-t0)" % n)
    env = {"QSO_SPECTRA_BACKEND": backend, "PATH": "/usr/bin:/bin"}
    res = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    return float(res.stdout.strip())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--n", type=int, default=6,
                    help="algebra size for the end-to-end comparison")
    args = ap.parse_args()

    print("pure Python kernels:")
    t_py = kernel_micro(py, 0, args.repeat)
    if c is None:
        print("compiled kernels unavailable; skipping comparison")
        return
    print("compiled kernels:")
    t_c = kernel_micro(c, 0, args.repeat)
    print("speedups (py / c):")
    for k in t_py:
        print(f"  {k:<28s} {t_py[k] / t_c[k]:9.2f}x")

    print(f"end-to-end verify_lemma_rels(N={args.n}):")
    e_py = min(end_to_end("py", args.n) for _ in range(args.repeat))
    e_c = min(end_to_end("c", args.n) for _ in range(args.repeat))
    print(f"  {'py backend':<28s} {e_py * 1000:9.1f} ms")
    print(f"  {'c backend':<28s} {e_c * 1000:9.1f} ms")
    print(f"  {'speedup':<28s} {e_py / e_c:9.2f}x")


if __name__ == "__main__":
    main()
