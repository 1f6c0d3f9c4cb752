"""Discrete k-median on a precomputed client x facility distance matrix."""

from __future__ import annotations

import itertools
import math

import numpy as np

from .rng import SplitMix64

__all__ = [
    "SolverLimitError",
    "DEFAULT_SUBSET_CAP",
    "DEFAULT_PARTITION_CAP",
    "subset_cost",
    "exhaustive",
    "local_search",
]

DEFAULT_SUBSET_CAP = 10**6
# bound on 2**n_clients * n_facilities for the client-partition route
DEFAULT_PARTITION_CAP = 5 * 10**9
SWAP_TOLERANCE = 1e-6


class SolverLimitError(RuntimeError):
    """The exact solver would exceed its configured work cap."""


def subset_cost(D: np.ndarray, subset) -> float:
    return float(D[:, list(subset)].min(axis=1).sum())


def _enumerate_subsets(D, k):
    # Lexicographic k-subsets; the last index is scanned vectorized.
    n, N = D.shape
    best_cost, best = math.inf, None
    for head in itertools.combinations(range(N - 1), k - 1):
        start = head[-1] + 1 if head else 0
        if start >= N:
            continue
        base = D[:, list(head)].min(axis=1) if head else np.full(n, np.inf)
        costs = np.minimum(base[:, None], D[:, start:]).sum(axis=0)
        j = int(np.argmin(costs))
        if costs[j] < best_cost:
            best_cost = float(costs[j])
            best = head + (start + j,)
    return best


def _best_single(D, n):
    # Best single facility (min column sum, lowest index) for every client subset.
    N = D.shape[1]
    size = 1 << n
    cost = np.zeros(size)
    arg = np.zeros(size, dtype=np.int64)
    sums = [np.zeros(N)]

    def rec(i, mask):
        for c in range(i, n):
            s = sums[-1] + D[c]
            sub = mask | (1 << c)
            j = int(np.argmin(s))
            cost[sub] = s[j]
            arg[sub] = j
            sums.append(s)
            rec(c + 1, sub)
            sums.pop()

    rec(0, 0)
    return cost, arg


def _partition_route(D, k):
    n, N = D.shape
    full = (1 << n) - 1
    single, arg = _best_single(D, n)
    # layer[j][S]: cheapest cover of S by at most j groups
    layers = [np.where(np.arange(full + 1) == 0, 0.0, np.inf)]
    choice = []
    for _ in range(k):
        prev = layers[-1]
        cur = prev.copy()
        pick = np.zeros(full + 1, dtype=np.int64)
        for S in range(1, full + 1):
            low = S & -S
            rest = S ^ low
            T = rest
            while True:
                grp = T | low
                c = single[grp] + prev[S ^ grp]
                if c < cur[S]:
                    cur[S] = c
                    pick[S] = grp
                if T == 0:
                    break
                T = (T - 1) & rest
        layers.append(cur)
        choice.append(pick)
    chosen = []
    S, j = full, k
    while S and j:
        grp = int(choice[j - 1][S])
        if grp == 0:
            j -= 1
            continue
        chosen.append(int(arg[grp]))
        S ^= grp
        j -= 1
    picked = sorted(set(chosen))
    for f in range(N):
        if len(picked) >= k:
            break
        if f not in picked:
            picked.append(f)
    return tuple(sorted(picked))


def exhaustive(
    D: np.ndarray,
    k: int,
    subset_cap: int = DEFAULT_SUBSET_CAP,
    partition_cap: int = DEFAULT_PARTITION_CAP,
) -> tuple:
    """Globally optimal k-subset of facility columns.

    Small facility sets are searched subset by subset in lexicographic order
    (first optimum wins).  Otherwise the optimum is found through the
    client side: every solution induces a partition of the clients into at
    most ``k`` groups, each served best by its own cheapest facility, so a
    subset DP over client partitions is exact as well.
    """
    n, N = D.shape
    if not 1 <= k <= N:
        raise ValueError(f"need 1 <= k <= {N} facilities, got k={k}")
    if math.comb(N, k) <= subset_cap:
        return _enumerate_subsets(D, k)
    if (1 << n) * N <= partition_cap and n <= 14:
        return _partition_route(D, k)
    raise SolverLimitError(
        f"C({N}, {k}) subsets and 2^{n} x {N} partition work both exceed the caps"
    )


def local_search(D: np.ndarray, k: int, seed: int = 0) -> tuple:
    """Single-swap local search from a seeded greedy start.

    The first facility is drawn uniformly with SplitMix64(seed); the other
    ``k - 1`` are added greedily.  The best swap (lowest position, then
    lowest facility on ties) is applied while it lowers the cost below
    ``(1 - 1e-6)`` times the current cost.
    """
    n, N = D.shape
    if not 1 <= k <= N:
        raise ValueError(f"need 1 <= k <= {N} facilities, got k={k}")
    rng = SplitMix64(seed)
    current = [rng.randbelow(N)]
    near = D[:, current[0]].copy()
    while len(current) < k:
        costs = np.minimum(near[:, None], D).sum(axis=0)
        costs[current] = np.inf
        f = int(np.argmin(costs))
        current.append(f)
        near = np.minimum(near, D[:, f])
    cost = float(near.sum())
    while cost > 0:
        best = (cost * (1 - SWAP_TOLERANCE), None, None)
        for p in range(k):
            others = [c for q, c in enumerate(current) if q != p]
            base = D[:, others].min(axis=1) if others else np.full(n, np.inf)
            costs = np.minimum(base[:, None], D).sum(axis=0)
            costs[current] = np.inf
            f = int(np.argmin(costs))
            if costs[f] < best[0]:
                best = (float(costs[f]), p, f)
        if best[1] is None:
            break
        current[best[1]] = best[2]
        cost = subset_cost(D, current)
    return tuple(sorted(current))
