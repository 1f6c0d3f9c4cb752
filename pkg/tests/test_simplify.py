import random

import pytest
from hypothesis import given, strategies as st

from klmedian.frechet import discrete_frechet
from klmedian.simplify import min_error_simplification, simplify_decide

from oracles import best_partition_error, min_error_by_midpoints

series = st.lists(st.integers(0, 4).map(float), min_size=1, max_size=7)
ells = st.integers(1, 4)


def test_decide_examples():
    # greedy maximal blocks: the whole range 10 fits one block at delta 5
    ok, blocks = simplify_decide((0, 10, 0, 10), 2, 5)
    assert ok and blocks == ((0, 4),)
    ok, blocks = simplify_decide((0, 10, 0, 10), 2, 0)
    assert not ok
    ok, blocks = simplify_decide((0, 0, 10, 10), 2, 0)
    assert ok and blocks == ((0, 2), (2, 4))
    assert simplify_decide((0, 10, 0, 10), 2, 4.9) == (False, None)
    assert simplify_decide((0, 0, 0), 1, 0)[0]


@pytest.mark.parametrize(
    "x, l, series_, err",
    [((0, 10), 1, (5,), 5), ((0, 10, 0, 10), 2, (5, 5), 5), ((1, 2, 3), 3, (1, 2, 3), 0)],
)
def test_simplification_examples(x, l, series_, err):
    s = min_error_simplification(x, l)
    assert s.series == series_ and s.error == err


def test_padding_repeats_first():
    s = min_error_simplification((1, 1, 1, 4, 4), 4)
    assert s.error == 0
    assert s.series == (1, 1, 1, 4)


@given(series, ells)
def test_matches_partition_oracle(x, l):
    s = min_error_simplification(x, l)
    assert s.error == best_partition_error(x, l)
    assert s.error == min_error_by_midpoints(x, l)


dyadic = st.lists(st.integers(-6400, 6400).map(lambda v: v / 64), min_size=1, max_size=15)


@given(st.lists(st.floats(-100, 100, allow_nan=False), min_size=1, max_size=15), ells)
def test_error_is_distance(x, l):
    s = min_error_simplification(x, l)
    assert discrete_frechet(x, s.series) == pytest.approx(s.error, rel=1e-12, abs=1e-300)


@given(dyadic, ells)
def test_structure(x, l):
    # dyadic values keep midpoints and half-ranges exact
    s = min_error_simplification(x, l)
    assert len(s.series) == l
    assert discrete_frechet(x, s.series) == s.error
    assert len(s.blocks) <= l
    assert s.blocks[0][0] == 0 and s.blocks[-1][1] == len(x)
    assert all(a[1] == b[0] for a, b in zip(s.blocks, s.blocks[1:]))
    assert min_error_simplification(x, l + 1).error <= s.error
    assert simplify_decide(x, l, s.error)[0]


def test_decide_tight_below_optimum():
    rng = random.Random(7)
    for _ in range(300):
        x = [rng.randint(0, 9) for _ in range(rng.randint(2, 9))]
        l = rng.randint(1, 3)
        err = min_error_simplification(x, l).error
        if err > 0:
            halves = sorted({abs(a - b) / 2 for a in x for b in x})
            below = max(h for h in halves if h < err)
            assert not simplify_decide(x, l, below)[0]
            assert not simplify_decide(x, l, err - 1e-9)[0]
