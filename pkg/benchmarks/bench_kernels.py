"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import sys
import timeit
from fractions import Fraction

from ldstab import _pykernels
from ldstab.rng import choice_thresholds, seed_state

try:
    from ldstab import _ckernels
except ImportError:
    _ckernels = None


def random_table(rng, n, m):
    return [rng.randrange(n) for _ in range(n * m)]


def cases(rng):
    small = random_table(rng, 8, 2)
    mid = random_table(rng, 64, 3)
    big = random_table(rng, 512, 3)
    mask = [rng.random() < 0.7 for _ in range(512)]
    target = [rng.random() < 0.5 for _ in range(64)]
    uniform = choice_thresholds([Fraction(1, 3)] * 3)
    return [
        ("pattern_counts n=8 m=2 k=16", "pattern_counts", (small, 8, 2, 16)),
        ("count_power n=64 m=3 k=30", "count_power", (mid, 64, 3, 30)),
        ("reach_closure n=512 m=3", "reach_closure", (big, 512, 3)),
        ("lris_mask n=512 m=3", "lris_mask", (big, 512, 3, mask)),
        ("sample_hits n=64 k=50 10^4", "sample_hits",
         (mid, 64, 3, 0, target, 50, 10_000, uniform, seed_state(1))),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; only the Python timings are shown", file=sys.stderr)
    rng = random.Random(args.seed)
    print(f"{'kernel':32} {'python [ms]':>12} {'cython [ms]':>12} {'speedup':>8}")
    for label, name, params in cases(rng):
        py = min(timeit.repeat(lambda: getattr(_pykernels, name)(*params), number=1, repeat=args.repeat))
        if _ckernels is None:
            print(f"{label:32} {py * 1e3:12.2f} {'-':>12} {'-':>8}")
            continue
        expected = getattr(_pykernels, name)(*params)
        got = getattr(_ckernels, name)(*params)
        if got != expected:
            raise SystemExit(f"{name}: backends disagree")
        cy = min(timeit.repeat(lambda: getattr(_ckernels, name)(*params), number=1, repeat=args.repeat))
        print(f"{label:32} {py * 1e3:12.2f} {cy * 1e3:12.2f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
