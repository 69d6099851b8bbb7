"""Timing comparison of the pure-Python and compiled Monte Carlo kernels.

Both kernels must produce identical hit counts on identical seeds; this
script asserts that while timing them.  Run: python benchmarks/bench_kernels.py
"""

import time
from fractions import Fraction

from caplab._kernels import BACKEND, _pure

try:
    from caplab._kernels import _fast
except ImportError:
    _fast = None

TWO64 = 1 << 64


def thresholds(b0, b1):
    def ceil64(x):
        return -((-x.numerator * TWO64) // x.denominator)

    return ceil64(b0) - 1, ceil64(b0 + b1) - 1


def bench(label, fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - start


def main():
    print("compiled backend available:", BACKEND)
    b0 = b1 = Fraction(1, 3)
    u0, u1 = thresholds(b0, b1)
    seed, trials, depth = 20240824, 50_000, 10

    hits_py, t_py = bench("pure", _pure.mc_pair_hits, seed, trials, depth, u0, u1)
    print("pair   pure    %8.3fs  hits=%d" % (t_py, hits_py))
    if _fast is not None:
        hits_cy, t_cy = bench("fast", _fast.mc_pair_hits, seed, trials, depth, u0, u1)
        print("pair   cython  %8.3fs  hits=%d  (%.1fx)" % (t_cy, hits_cy, t_py / t_cy))
        assert hits_cy == hits_py, "kernel outputs differ"

    # clopen target {00, 11} at depth 10
    lens, vals = [2, 2], [0b00, 0b11]
    hits_py, t_py = bench(
        "pure", _pure.mc_clopen_hits, seed, trials, 10, u0, u1, lens, vals
    )
    print("clopen pure    %8.3fs  hits=%d" % (t_py, hits_py))
    if _fast is not None:
        hits_cy, t_cy = bench(
            "fast", _fast.mc_clopen_hits, seed, trials, 10, u0, u1, lens, vals
        )
        print(
            "clopen cython  %8.3fs  hits=%d  (%.1fx)" % (t_cy, hits_cy, t_py / t_cy)
        )
        assert hits_cy == hits_py, "kernel outputs differ"


if __name__ == "__main__":
    main()
