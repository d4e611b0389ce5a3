"""Compare the compiled and pure-Python modular row-reduction kernels.

Workloads: random dense integer matrices and the ad-matrix of a regular
nilpotent element of E6 (the shape the orbit enumeration actually reduces).

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import timeit

from cochar import _kernels_py
from cochar.chevalley import build_algebra
from cochar.linalg import PRIMES, integer_rows

try:
    from cochar import _kernels
except ImportError:  # extension not built
    _kernels = None

P = PRIMES[0]


def random_matrix(m, n, seed):
    rng = random.Random(seed)
    return [[rng.randint(-50, 50) for _ in range(n)] for _ in range(m)]


def ad_regular(system):
    alg = build_algebra(system)
    e = alg.zero()
    for i in range(alg.sys.rank):
        e = e + alg.e(alg.sys.simple_root(i))
    return integer_rows(alg.ad_matrix(e))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    workloads = [
        ("random 60x60", random_matrix(60, 60, 1)),
        ("random 120x150", random_matrix(120, 150, 2)),
        ("ad(e_reg) E6 78x78", ad_regular("E6")),
    ]
    print(f"{'workload':<22}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, m in workloads:
        t_py = min(timeit.repeat(lambda: _kernels_py.rank_mod(m, P), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{name:<22}{t_py * 1e3:>14.2f}{'n/a':>14}{'':>10}")
            continue
        assert _kernels.rank_mod(m, P) == _kernels_py.rank_mod(m, P)
        t_cy = min(timeit.repeat(lambda: _kernels.rank_mod(m, P), number=1, repeat=args.repeat))
        print(f"{name:<22}{t_py * 1e3:>14.2f}{t_cy * 1e3:>14.2f}{t_py / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()
