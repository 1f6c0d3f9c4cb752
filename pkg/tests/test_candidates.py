import math
import random

import numpy as np
import pytest

from klmedian import _kernels
from klmedian.candidates import (
    ESTIMATE_FACTOR,
    candidate_ball,
    candidate_centers,
    estimate_opt_cost,
    first_match_indices,
)
from klmedian.frechet import count_traversals, discrete_frechet

from oracles import best_subset_cost


def test_ball_one_point():
    ball = candidate_ball((0,), 1, 0.5)
    assert ball[:, 0].tolist() == [v / 2 for v in range(-5, 6)]
    assert len(first_match_indices(1)) == 1
    nearest = np.abs(ball[:, 0] - 0.3).min()
    assert nearest == pytest.approx(0.2) and nearest <= 0.5


def test_ball_grid_anchored_at_zero():
    ball = candidate_ball((0.37, 1.1), 0.8, 0.25)
    steps = ball / 0.2
    assert np.allclose(steps, np.round(steps))
    assert len(np.unique(ball, axis=0)) == len(ball)


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_ball_size_bound(l):
    eps = 0.5
    ball = candidate_ball(tuple(range(l)), 1.3, eps)
    assert len(first_match_indices(l)) <= count_traversals(l, l) <= 4**l
    assert len(ball) <= 4**l * (2 * math.ceil((2 + eps) / eps) + 3) ** l


def test_ball_covers_radius():
    rng = random.Random(9)
    for _ in range(20):
        l = rng.randint(1, 3)
        xt = tuple(rng.uniform(0, 10) for _ in range(l))
        r, eps = rng.uniform(0.5, 3), rng.uniform(0.2, 0.9)
        ball = candidate_ball(xt, r, eps)
        for _ in range(30):
            y = tuple(v + rng.uniform(-2 * r, 2 * r) for v in xt)
            if discrete_frechet(xt, y) <= 2 * r:
                d = _kernels.distance_matrix([y], ball).min()
                assert d <= eps * r + 1e-9


def test_estimate_examples():
    assert estimate_opt_cost([(1, 2, 1)] * 3, 2, 3) == estimate_opt_cost([(4, 4)] * 2, 1, 1) == 0
    assert estimate_opt_cost([(1, 2, 1)] * 3, 2, 1) == 1.5
    assert estimate_opt_cost([(0,), (10,)], 2, 1) == 0
    assert estimate_opt_cost([(0,), (10,)], 1, 1) == 10


def test_estimate_sandwich():
    rng = random.Random(13)
    for _ in range(25):
        C = [tuple(float(rng.randint(0, 12)) for _ in range(rng.randint(1, 6))) for _ in range(rng.randint(2, 6))]
        k, l = rng.randint(1, 2), rng.randint(1, 2)
        est = estimate_opt_cost(C, k, l)
        grid = np.array([(a / 2, b / 2) if l == 2 else (a / 2,) for a in range(25) for b in range(25 if l == 2 else 1)])
        opt_grid = best_subset_cost(_kernels.distance_matrix(C, grid), k)
        # half-integer grid holds every block midpoint, so it contains the optimum
        assert opt_grid <= est + 1e-9
        assert est <= ESTIMATE_FACTOR * opt_grid + 1e-9


def test_candidates_zero_estimate():
    cs = candidate_centers([(0, 0, 0)], 1, 1, 0.5)
    assert cs.series() == [(0.0,)] and cs.delta_estimate == 0 and cs.radii_used == ()


def test_candidates_two_points():
    C = [(0.0,), (10.0,)]
    cs = candidate_centers(C, 1, 1, 0.5)
    assert cs.delta_estimate == 10
    n = 2
    assert len(cs.radii_used) == math.ceil(math.log2(ESTIMATE_FACTOR * n)) + 2
    assert cs.radii_used[-1] >= 2 * cs.delta_estimate
    best = best_subset_cost(_kernels.distance_matrix(C, cs.centers), 1)
    assert best <= (1 + 3 * 0.5) * 10
    assert len(np.unique(cs.centers, axis=0)) == len(cs)
    assert all(len(c) == 1 for c in cs.series())
    assert {(0.0,), (10.0,)} <= set(cs.series())
