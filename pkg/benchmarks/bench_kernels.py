"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one row per kernel with the best wall time of each backend and the
speedup.  Both backends are also checked to return equal results.
"""

import argparse
import random
import timeit

import numpy as np

from klmedian import _pykernels
from klmedian.profiles import _range_summaries

try:
    from klmedian import _ckernels
except ImportError:
    _ckernels = None


def _workloads(rng):
    long_x = tuple(rng.uniform(0, 100) for _ in range(400))
    long_y = tuple(rng.uniform(0, 100) for _ in range(300))
    clients = [tuple(rng.uniform(0, 10) for _ in range(rng.randint(5, 20))) for _ in range(40)]
    facilities = np.array([[rng.uniform(0, 10) for _ in range(3)] for _ in range(500)])
    ranks = (1, 3, 2, 4, 1, 4, 2, 3, 1, 2, 4, 3)
    ranks_dp = tuple(rng.randint(1, 4) for _ in range(200))
    mins, maxs = [1.0, 2.0, 1.0], [4.0, 3.0, 4.0]
    search_ranks = (1, 3, 2, 3, 1, 2, 3, 1)
    target = _pykernels.profile_array(search_ranks, 3, 3)
    tables = []
    for ranges in _range_summaries(search_ranks):
        t = np.zeros((4, 4), dtype=np.uint8)
        for lo, hi in ranges:
            t[lo, hi] = 1
        tables.append(t)
    ranks_f = tuple(float(v) for v in ranks_dp)
    return {
        "frechet 400x300": lambda k: k.frechet(long_x, long_y),
        "distance_matrix 40x500": lambda k: k.distance_matrix(clients, facilities),
        "assignment_dp m=200 l=3": lambda k: k.assignment_dp(ranks_f, mins, maxs, True),
        "profile_array m=12 r=4 l=3": lambda k: k.profile_array(ranks, 4, 3),
        "search_length t=6": lambda k: k.search_length(1, 1, 3, 3, 6, *tables, target),
    }


def _same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        raise SystemExit("compiled extension not built; run pip install -e . first")
    rng = random.Random(0)
    print(f"{'kernel':<28}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, call in _workloads(rng).items():
        assert _same(call(_pykernels), call(_ckernels)), name
        py = min(timeit.repeat(lambda: call(_pykernels), number=1, repeat=args.repeat))
        cy = min(timeit.repeat(lambda: call(_ckernels), number=1, repeat=args.repeat))
        print(f"{name:<28}{py * 1e3:>14.3f}{cy * 1e3:>14.3f}{py / cy:>9.0f}x")


if __name__ == "__main__":
    main()
