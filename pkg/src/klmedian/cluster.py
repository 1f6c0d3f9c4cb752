"""k-median solvers over explicit facilities and the end-to-end pipeline.

The pipeline reduces every input series to constant complexity, builds a
finite candidate set from the reduced series and solves discrete k-median
over it.  The exact solver (``"exhaustive"``) and single-swap local search
(``"local_search"``) stand in for a doubling-metric approximation scheme;
both work on a client x facility distance matrix.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels, kmedian
from .candidates import candidate_centers
from .core import as_series
from .profiles import DEFAULT_SEARCH_CAP, ReductionCache, reduce_dataset

__all__ = [
    "SOLVERS",
    "ClusterSolution",
    "kmedian_cost",
    "exhaustive_kmedian",
    "local_search_kmedian",
    "nltas_pipeline",
]

log = logging.getLogger(__name__)

SOLVERS = ("exhaustive", "local_search")


@dataclass(frozen=True)
class ClusterSolution:
    centers: tuple
    assignment: tuple
    cost: float
    solver_used: str
    stats: dict = field(default_factory=dict, compare=False)


def _assign(C, centers):
    assignment = []
    total = 0.0
    for c in C:
        dists = [_kernels.frechet(c, s) for s in centers]
        j = min(range(len(dists)), key=dists.__getitem__)
        assignment.append(j)
        total += dists[j]
    return tuple(assignment), total


def kmedian_cost(C: Sequence[Sequence[float]], S: Sequence[Sequence[float]]) -> float:
    """Sum over clients of the distance to the nearest center, in client order."""
    if len(S) == 0:
        raise ValueError("need at least one center")
    return _assign(C, S)[1]


def _facility_matrix(F) -> np.ndarray:
    if isinstance(F, np.ndarray):
        return F
    rows = [tuple(f) for f in F]
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValueError("facilities must share one complexity")
    return np.asarray(rows, dtype=np.float64)


def _solution(C, F, chosen, solver):
    centers = tuple(tuple(F[j].tolist()) for j in chosen)
    assignment, cost = _assign(C, centers)
    return ClusterSolution(centers, assignment, cost, solver)


def exhaustive_kmedian(
    C,
    F,
    k: int,
    cap: int = kmedian.DEFAULT_SUBSET_CAP,
    partition_cap: int = kmedian.DEFAULT_PARTITION_CAP,
) -> ClusterSolution:
    """Optimal choice of ``k`` facilities from ``F`` for clients ``C``."""
    F = _facility_matrix(F)
    D = _kernels.distance_matrix(C, F)
    chosen = kmedian.exhaustive(D, k, cap, partition_cap)
    return _solution(C, F, chosen, "exhaustive")


def local_search_kmedian(C, F, k: int, seed: int = 0) -> ClusterSolution:
    """Single-swap local search; within factor 5 of optimal on convergence."""
    F = _facility_matrix(F)
    D = _kernels.distance_matrix(C, F)
    chosen = kmedian.local_search(D, k, seed)
    return _solution(C, F, chosen, "local_search")


def nltas_pipeline(
    P: Sequence[Sequence[float]],
    k: int,
    l: int,
    eps: float,
    solver: str = "exhaustive",
    seed: int = 0,
    cap: int = DEFAULT_SEARCH_CAP,
    cache: ReductionCache | None = None,
    executor=None,
) -> ClusterSolution:
    """Approximate (k, l)-median of ``P``.

    Stage accuracies are ``eps / 16`` for the reduction and ``eps / 12`` for
    the candidate grid.  The returned assignment and cost are evaluated on
    the original series, not on their reductions.
    """
    if not P:
        raise ValueError("need at least one series")
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    if not 0 < eps <= 0.5:
        raise ValueError("eps must lie in (0, 1/2]")
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}; choose from {SOLVERS}")
    P = [as_series(x) for x in P]
    if cache is None:
        cache = ReductionCache()
    hits_before = cache.hits
    timings = {}

    t0 = time.perf_counter()
    reductions = reduce_dataset(P, l, eps / 16, cap, cache, executor)
    C = [red.series for red in reductions]
    timings["reduce"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    cands = candidate_centers(C, k, l, eps / 12, seed)
    F = cands.centers
    if F.shape[0] < k:
        F = np.concatenate([F, np.repeat(F[:1], k - F.shape[0], axis=0)])
    timings["candidates"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    D = _kernels.distance_matrix(C, F)
    if solver == "exhaustive":
        chosen = kmedian.exhaustive(D, k)
    else:
        chosen = kmedian.local_search(D, k, seed)
    timings["solve"] = time.perf_counter() - t0

    sol = _solution(P, F, chosen, solver)
    stats = {
        "cache_hits": cache.hits - hits_before,
        "candidates": int(cands.centers.shape[0]),
        "reduced_max_complexity": max(len(c) for c in C),
        "warnings": sum(red.cap_exceeded for red in reductions),
        "timings": timings,
    }
    log.debug("pipeline stats %s", stats)
    return ClusterSolution(sol.centers, sol.assignment, sol.cost, solver, stats)
