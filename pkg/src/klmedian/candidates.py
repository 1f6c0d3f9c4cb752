"""Finite candidate centers for (k, l)-median.

Around the simplification of every input series, balls of complexity-``l``
series are discretized on an absolute grid of width ``eps * r`` for a ladder
of radii ``r``; one member of the union lies within ``eps * r`` of every
complexity-``l`` series at distance ``<= r`` from the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _kernels, kmedian
from .frechet import enumerate_traversals
from .simplify import min_error_simplification

__all__ = [
    "ESTIMATE_FACTOR",
    "CandidateSet",
    "first_match_indices",
    "candidate_ball",
    "estimate_opt_cost",
    "candidate_centers",
]

# Guarantee of the cost estimate: OPT <= estimate <= ESTIMATE_FACTOR * OPT
# (simplification facilities are a 3-approximation, local search adds 5).
ESTIMATE_FACTOR = 15


@dataclass(frozen=True)
class CandidateSet:
    centers: np.ndarray  # (count, l), unique rows in lexicographic order
    radii_used: tuple
    delta_estimate: float
    simplifications: tuple

    def __len__(self):
        return self.centers.shape[0]

    def series(self) -> list:
        return [tuple(row) for row in self.centers.tolist()]


@lru_cache(maxsize=None)
def first_match_indices(l: int) -> tuple:
    """Distinct ``(i_1, ..., i_l)`` over traversals of two length-``l`` series,
    where ``i_j`` is the first index matched to position ``j``."""
    seen = set()
    for t in enumerate_traversals(l, l):
        first = [None] * l
        for i, j in t:
            if first[j] is None:
                first[j] = i
        seen.add(tuple(first))
    return tuple(sorted(seen))


def _grid(center: float, r: float, eps: float) -> np.ndarray:
    g = eps * r
    half = (2 + eps) * r
    k_lo = math.ceil((center - half) / g)
    k_hi = math.floor((center + half) / g)
    return np.arange(k_lo, k_hi + 1, dtype=np.float64) * g


def _ball_rows(x_tilde, r, eps):
    grids = [_grid(float(c), r, eps) for c in x_tilde]
    parts = []
    for idx in first_match_indices(len(x_tilde)):
        axes = np.meshgrid(*(grids[i] for i in idx), indexing="ij")
        parts.append(np.stack([a.ravel() for a in axes], axis=1))
    return parts


def candidate_ball(x_tilde: Sequence[float], r: float, eps: float) -> np.ndarray:
    """Grid-snapped cover of all complexity-``l`` series within ``2r`` of ``x_tilde``.

    Returns unique rows of an ``(count, l)`` array.
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    return _unique_rows(np.concatenate(_ball_rows(x_tilde, r, eps)))


def estimate_opt_cost(C: Sequence[Sequence[float]], k: int, l: int, seed: int = 0) -> float:
    """Upper estimate of the optimal (k, l)-median cost of ``C``.

    Local search over the simplifications of the inputs; within a factor
    ``ESTIMATE_FACTOR`` of the optimum and never below it.
    """
    if not C:
        raise ValueError("need at least one series")
    G = _unique_rows([min_error_simplification(x, l).series for x in C])
    D = _kernels.distance_matrix(C, G)
    chosen = kmedian.local_search(D, min(k, G.shape[0]), seed)
    return kmedian.subset_cost(D, chosen)


def _unique_rows(rows) -> np.ndarray:
    # lexicographic row dedup; np.unique(axis=0) sorts a structured view, far slower
    a = np.asarray(rows, dtype=np.float64) + 0.0  # folds -0.0 into 0.0
    if a.shape[0] < 2:
        return a
    a = a[np.lexsort(a.T[::-1])]
    keep = np.ones(a.shape[0], dtype=bool)
    keep[1:] = np.any(a[1:] != a[:-1], axis=1)
    return a[keep]


def candidate_centers(
    C: Sequence[Sequence[float]], k: int, l: int, eps: float, seed: int = 0
) -> CandidateSet:
    """Candidate centers containing a k-subset of cost ``<= (1 + 3 eps) OPT``."""
    n = len(C)
    if n == 0:
        raise ValueError("need at least one series")
    simps = tuple(min_error_simplification(x, l).series for x in C)
    delta = estimate_opt_cost(C, k, l, seed)
    if delta == 0:
        return CandidateSet(_unique_rows(simps), (), 0.0, simps)
    top = math.ceil(math.log2(ESTIMATE_FACTOR * n)) + 1
    radii = tuple(2**i * delta / (ESTIMATE_FACTOR * n) for i in range(top + 1))
    parts = [np.asarray(simps, dtype=np.float64)]
    for s in dict.fromkeys(simps):
        for r in radii:
            parts.extend(_ball_rows(s, r, eps))
    return CandidateSet(_unique_rows(np.concatenate(parts)), radii, delta, simps)
