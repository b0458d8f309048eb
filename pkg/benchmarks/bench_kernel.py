"""Benchmark the compiled arithmetic kernel against the pure-Python twin.

Two views of the same question:

* micro -- time ``mulmod`` alone on deterministic random vectors, for rings
  of increasing degree and for small/large coefficient sizes;
* end-to-end -- run an identical construct-and-verify workload in a fresh
  subprocess per backend (the kernel is chosen at import time, so the
  comparison needs one interpreter each) and compare wall times.

Usage:
    python3 benchmarks/bench_kernel.py            # both parts
    python3 benchmarks/bench_kernel.py --micro    # mulmod timings only
    python3 benchmarks/bench_kernel.py --e2e      # workload timings only
"""

import argparse
import os
import random
import subprocess
import sys
import time

from heckerpf import _kernel
from heckerpf.field import _reduction_rows, minimal_polynomial

try:
    from heckerpf import _ckernel
except ImportError:
    _ckernel = None


def _vectors(degree, bits, count, seed):
    rnd = random.Random(seed)
    lo, hi = -(1 << bits), 1 << bits
    return [
        tuple(rnd.randint(lo, hi) for _ in range(degree))
        for _ in range(count)
    ]


def _time_mulmod(kernel, vecs, red, repeat):
    pairs = list(zip(vecs, vecs[1:] + vecs[:1]))
    start = time.perf_counter()
    for _ in range(repeat):
        for a, b in pairs:
            kernel.mulmod(a, b, red)
    elapsed = time.perf_counter() - start
    return elapsed / (repeat * len(pairs))


def run_micro(repeat):
    print("mulmod micro-benchmark (ns per product)")
    header = f"{'ring':>8} {'degree':>6} {'bits':>5} {'pure':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for p in (5, 7, 9, 12):
        degree = minimal_polynomial(p).degree
        red = _reduction_rows(p)
        for bits in (16, 192):
            vecs = _vectors(degree, bits, 64, seed=1000 * p + bits)
            pure = _time_mulmod(_kernel, vecs, red, repeat)
            if _ckernel is None:
                print(f"{'p=%d' % p:>8} {degree:>6} {bits:>5} {pure * 1e9:>10.0f} {'n/a':>10} {'n/a':>8}")
                continue
            comp = _time_mulmod(_ckernel, vecs, red, repeat)
            print(
                f"{'p=%d' % p:>8} {degree:>6} {bits:>5} "
                f"{pure * 1e9:>10.0f} {comp * 1e9:>10.0f} {pure / comp:>7.2f}x"
            )
    print()


# construct-and-verify workload exercising the full exact-arithmetic stack:
# a conjugate-pair construction in a degree-2 ring and an odd-weight
# construction in a degree-3 ring, both checked against the two relations
WORKLOAD = """
import time
from heckerpf.backend import active_backend
from heckerpf.group import GenWord
from heckerpf.isp import isp_of_word
from heckerpf.rpf import build_symmetric_odd, build_union, verify

start = time.perf_counter()
ok = True
ok &= verify(build_union(2, isp_of_word(GenWord(6, (2,))))).valid
ok &= verify(build_symmetric_odd(3, isp_of_word(GenWord(7, (1, 6))))).valid
elapsed = time.perf_counter() - start
print(f"{active_backend()} {elapsed:.3f} {int(ok)}")
"""


def run_e2e():
    print("end-to-end workload (construct + verify, one subprocess per backend)")
    results = {}
    for backend in ("pure", "compiled"):
        if backend == "compiled" and _ckernel is None:
            print("  compiled: unavailable (extension did not build)")
            continue
        env = dict(os.environ, HECKERPF_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, "-c", WORKLOAD],
            capture_output=True, text=True, env=env, check=True,
        )
        name, seconds, ok = proc.stdout.split()
        assert name == backend and ok == "1", proc.stdout
        results[backend] = float(seconds)
        print(f"  {backend:>8}: {float(seconds):.3f}s")
    if len(results) == 2:
        print(f"  speedup: {results['pure'] / results['compiled']:.2f}x")
    print()


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--micro", action="store_true", help="run only the mulmod micro-benchmark")
    parser.add_argument("--e2e", action="store_true", help="run only the end-to-end workload")
    parser.add_argument("--repeat", type=int, default=200, help="micro-benchmark repetitions (default 200)")
    args = parser.parse_args(argv)
    both = not (args.micro or args.e2e)
    if args.micro or both:
        run_micro(args.repeat)
    if args.e2e or both:
        run_e2e()


if __name__ == "__main__":
    main()
