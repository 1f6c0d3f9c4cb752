"""Time-series values, canonical forms and rank machinery.

A time series is stored as a plain ``tuple`` of Python floats.  Tuples are
immutable and hashable, which keeps every operation in the package a pure
function and lets series be used directly as set members and cache keys.
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "TimeSeries",
    "RankSequence",
    "Traversal",
    "InvalidSeriesError",
    "as_series",
    "canonicalize",
    "rank_sequence",
    "apply_values",
    "distinct_sorted",
]

TimeSeries = tuple  # tuple[float, ...], length >= 1, all entries finite
Traversal = tuple  # tuple[tuple[int, int], ...], 0-based index pairs


class InvalidSeriesError(ValueError):
    """Raised for empty series or non-finite entries."""


class RankSequence(NamedTuple):
    """A series whose entries are ranks ``1..alphabet_size``."""

    ranks: tuple
    alphabet_size: int

    def is_surjective(self) -> bool:
        return set(self.ranks) == set(range(1, self.alphabet_size + 1))


def as_series(values: Iterable[float]) -> TimeSeries:
    """Validate ``values`` and return them as a tuple of floats."""
    out = tuple(float(v) for v in values)
    if not out:
        raise InvalidSeriesError("time series must contain at least one value")
    for i, v in enumerate(out):
        if not math.isfinite(v):
            raise InvalidSeriesError(f"non-finite value {v!r} at position {i}")
    return out


def canonicalize(x: Sequence[float]) -> TimeSeries:
    """Collapse maximal runs of equal consecutive values.

    >>> canonicalize((1, 1, 2, 2, 1))
    (1, 2, 1)
    """
    out = [x[0]]
    for v in x[1:]:
        if v != out[-1]:
            out.append(v)
    return tuple(out)


def distinct_sorted(x: Sequence[float]) -> tuple:
    return tuple(sorted(set(x)))


def rank_sequence(x: Sequence[float]) -> RankSequence:
    """Replace each value by its 1-based rank among the distinct values of ``x``."""
    levels = distinct_sorted(x)
    rank_of = {v: i + 1 for i, v in enumerate(levels)}
    return RankSequence(tuple(rank_of[v] for v in x), len(levels))


def apply_values(rs: RankSequence, sorted_values: Sequence[float]) -> TimeSeries:
    """Substitute the ``i``-th smallest value for every occurrence of rank ``i``."""
    if len(sorted_values) != rs.alphabet_size:
        raise ValueError(
            f"expected {rs.alphabet_size} values, got {len(sorted_values)}"
        )
    for a, b in zip(sorted_values, sorted_values[1:]):
        if not a < b:
            raise ValueError("values must be strictly increasing")
    return tuple(sorted_values[k - 1] for k in rs.ranks)
