"""Discrete Frechet distance and brute-force traversal oracles."""

from __future__ import annotations

from typing import Iterator, Sequence

from . import _kernels

__all__ = [
    "TraversalLimitError",
    "DEFAULT_TRAVERSAL_CAP",
    "discrete_frechet",
    "count_traversals",
    "enumerate_traversals",
    "brute_force_frechet",
]

DEFAULT_TRAVERSAL_CAP = 10**7


class TraversalLimitError(RuntimeError):
    """The number of traversals exceeds the configured cap."""


def discrete_frechet(x: Sequence[float], y: Sequence[float]) -> float:
    """Discrete Frechet distance between two 1-D series.

    Standard quadratic dynamic program; memory is linear in the shorter
    series.

    >>> discrete_frechet((0, 2, 1), (0, 1))
    1.0
    """
    return _kernels.frechet(x, y)


def count_traversals(m: int, l: int) -> int:
    """Number of monotone lattice paths from (0, 0) to (m-1, l-1) (Delannoy number)."""
    row = [1] * l
    for _ in range(1, m):
        new = [1] * l
        for j in range(1, l):
            new[j] = new[j - 1] + row[j] + row[j - 1]
        row = new
    return row[-1]


def _walk(m: int, l: int) -> Iterator[tuple]:
    path = [(0, 0)]

    def rec(i, j):
        if i == m - 1 and j == l - 1:
            yield tuple(path)
            return
        # successors in lexicographic order
        for di, dj in ((0, 1), (1, 0), (1, 1)):
            a, b = i + di, j + dj
            if a < m and b < l:
                path.append((a, b))
                yield from rec(a, b)
                path.pop()

    yield from rec(0, 0)


def enumerate_traversals(
    m: int, l: int, cap: int = DEFAULT_TRAVERSAL_CAP
) -> list[tuple]:
    """All traversals of an ``m`` x ``l`` grid as 0-based pair sequences.

    Traversals are returned in lexicographic order of their pair sequences.
    Raises ``TraversalLimitError`` when more than ``cap`` would be produced.
    """
    if m < 1 or l < 1:
        raise ValueError("grid dimensions must be positive")
    total = count_traversals(m, l)
    if total > cap:
        raise TraversalLimitError(
            f"{total} traversals for a {m}x{l} grid exceed the cap of {cap}"
        )
    return list(_walk(m, l))


def brute_force_frechet(
    x: Sequence[float], y: Sequence[float], cap: int = DEFAULT_TRAVERSAL_CAP
) -> float:
    """Frechet distance as a literal min over traversals of the max matched gap."""
    best = float("inf")
    for t in enumerate_traversals(len(x), len(y), cap):
        cost = max(abs(x[i] - y[j]) for i, j in t)
        if cost < best:
            best = cost
    return float(best)
