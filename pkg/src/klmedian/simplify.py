"""Minimum-error l-simplification of 1-D series under the discrete Frechet distance.

In one dimension a series ``x`` is within distance ``delta`` of some
complexity-``l`` series exactly when ``x`` splits into at most ``l``
contiguous blocks whose value ranges are at most ``2 * delta``; the block
midpoints then form the simplification.  The optimal ``2 * delta`` is the
range of some block, so the exact minimum is found by binary search over the
half-differences of the input values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = ["Simplification", "simplify_decide", "min_error_simplification"]


@dataclass(frozen=True)
class Simplification:
    series: tuple
    error: float
    blocks: tuple  # half-open (start, stop) index ranges covering the input


def simplify_decide(x: Sequence[float], l: int, delta: float):
    """Greedy feasibility test.

    Returns ``(True, blocks)`` when ``x`` splits into at most ``l`` maximal
    left-to-right blocks of range ``<= 2 * delta``, else ``(False, None)``.
    """
    width = 2 * delta
    blocks = []
    start = 0
    lo = hi = x[0]
    for i in range(1, len(x)):
        v = x[i]
        nlo = v if v < lo else lo
        nhi = v if v > hi else hi
        if nhi - nlo > width:
            blocks.append((start, i))
            if len(blocks) >= l:
                return False, None
            start = i
            lo = hi = v
        else:
            lo, hi = nlo, nhi
    blocks.append((start, len(x)))
    return True, tuple(blocks)


def _candidate_errors(x: Sequence[float]) -> np.ndarray:
    levels = np.unique(np.asarray(x, dtype=np.float64))
    diffs = levels[None, :] - levels[:, None]
    return np.unique(diffs[np.triu_indices(len(levels))] / 2)


def _pad_front(centers: list, l: int) -> tuple:
    return tuple([centers[0]] * (l - len(centers)) + centers)


def min_error_simplification(x: Sequence[float], l: int) -> Simplification:
    """Best complexity-``l`` approximation of ``x`` and its exact error.

    The result always has exactly ``l`` entries; when fewer blocks are needed
    the first center is repeated at the front, which leaves distances
    unchanged.

    >>> s = min_error_simplification((0, 10, 0, 10), 2)
    >>> s.series, s.error
    ((5.0, 5.0), 5.0)
    """
    if l < 1:
        raise ValueError("l must be positive")
    x = tuple(float(v) for v in x)
    if len(x) <= l:
        blocks = tuple((i, i + 1) for i in range(len(x)))
        return Simplification(_pad_front(list(x), l), 0.0, blocks)

    cands = _candidate_errors(x)
    lo, hi = 0, len(cands) - 1  # the full range is always feasible with one block
    while lo < hi:
        mid = (lo + hi) // 2
        if simplify_decide(x, l, float(cands[mid]))[0]:
            hi = mid
        else:
            lo = mid + 1
    delta = float(cands[lo])
    _, blocks = simplify_decide(x, l, delta)
    centers = []
    for a, b in blocks:
        seg = x[a:b]
        centers.append((min(seg) + max(seg)) / 2)
    return Simplification(_pad_front(centers, l), delta, blocks)
