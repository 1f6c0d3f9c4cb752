import itertools
import os
import random
import subprocess
import sys

import numpy as np
import pytest

from klmedian import _kernels, _pykernels
from klmedian.profiles import _range_summaries

from oracles import feasible_value_profiles


def _random_series(rng, m, hi=5):
    return tuple(float(rng.randint(0, hi)) for _ in range(m))


def test_frechet_agrees(backend):
    rng = random.Random(0)
    for _ in range(500):
        x = _random_series(rng, rng.randint(1, 12))
        y = tuple(rng.uniform(-2, 7) for _ in range(rng.randint(1, 5)))
        assert backend.frechet(x, y) == _pykernels.frechet(x, y)


def test_distance_matrix(backend):
    rng = random.Random(1)
    C = [_random_series(rng, rng.randint(1, 8)) for _ in range(6)]
    F = np.array([[rng.uniform(0, 5) for _ in range(3)] for _ in range(9)])
    D = backend.distance_matrix(C, F)
    assert D.shape == (6, 9)
    for i, j in itertools.product(range(6), range(9)):
        assert D[i, j] == _pykernels.frechet(C[i], tuple(F[j]))


@pytest.mark.parametrize("shared", [True, False])
def test_assignment_dp(backend, shared):
    rng = random.Random(2)
    for _ in range(300):
        x = _random_series(rng, rng.randint(1, 7), 3)
        l = rng.randint(1, 3)
        vals = sorted(set(x))
        truth = feasible_value_profiles(x, l, shared)
        p = [tuple(sorted(rng.sample(vals, 1) * 2 if rng.random() < 0.3 else rng.choices(vals, k=2))) for _ in range(l)]
        got = backend.assignment_dp(x, [a for a, _ in p], [b for _, b in p], shared)
        assert bool(got) == (tuple(p) in truth)


def test_profile_array_and_equals(backend):
    rng = random.Random(3)
    for _ in range(200):
        ranks = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 8)))
        r = max(ranks)
        L = rng.randint(1, 4)
        a = backend.profile_array(ranks, r, L)
        b = _pykernels.profile_array(ranks, r, L)
        assert a.dtype == np.int32 and a.tolist() == b.tolist()
        other = tuple(rng.randint(1, r) for _ in range(rng.randint(1, 8)))
        expect = _pykernels.profile_array(other, r, L).tolist() == b.tolist()
        assert bool(backend.profile_equals(other, r, L, b)) == expect


def test_search_length(backend):
    rng = random.Random(4)
    for _ in range(60):
        ranks = [rng.randint(1, 3)]
        while len(ranks) < rng.randint(3, 9):
            v = rng.randint(1, 3)
            if v != ranks[-1]:
                ranks.append(v)
        ranks = tuple(ranks)
        r = max(ranks)
        if set(ranks) != set(range(1, r + 1)):
            continue
        target = _pykernels.profile_array(ranks, r, 3)
        tables = []
        for rr in _range_summaries(ranks):
            t = np.zeros((r + 1, r + 1), dtype=np.uint8)
            for lo, hi in rr:
                t[lo, hi] = 1
            tables.append(t)
        for length in range(r, len(ranks) + 1):
            args = (ranks[0], ranks[-1], r, 3, length, *tables, target)
            assert backend.search_length(*args) == _pykernels.search_length(*args)


def test_backend_selection():
    assert _kernels.BACKEND in ("cython", "python")
    env = dict(os.environ, KLMEDIAN_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from klmedian import _kernels; print(_kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_benchmark_runs():
    pytest.importorskip("klmedian._ckernels")
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    proc = subprocess.run(
        [sys.executable, os.path.join(root, "benchmarks", "bench_kernels.py"), "--repeat", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "frechet" in proc.stdout and "speedup" in proc.stdout
