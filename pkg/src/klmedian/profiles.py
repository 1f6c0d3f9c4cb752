"""Profile-based complexity reduction.

A series ``x`` is first snapped onto a grid whose width is ``eps`` times its
minimum simplification error, which leaves only O(l / eps) distinct values
and moves every distance to a complexity-``l`` query by at most a factor
``1 +- eps``.  Distances to complexity-``l`` queries depend only on the set
of l-profiles (per-sector min/max ranks over all traversals), and the
profiles depend only on the rank sequence.  The reduction therefore searches
for the shortest rank sequence with the same profile set and substitutes the
quantized values back in.  Results are memoized per rank sequence.
"""

from __future__ import annotations

import logging
import math
import os
import tempfile
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .core import (
    RankSequence,
    apply_values,
    canonicalize,
    distinct_sorted,
    rank_sequence,
)
from .frechet import DEFAULT_TRAVERSAL_CAP, enumerate_traversals
from .simplify import min_error_simplification

__all__ = [
    "DEFAULT_SEARCH_CAP",
    "QuantizedSeries",
    "ProfileSet",
    "Reduction",
    "ReductionCache",
    "reduce_value_domain",
    "traversal_sectors",
    "assignment_dp",
    "profile_set",
    "brute_profile_set",
    "shortest_equivalent",
    "complexity_reduction",
    "reduce_dataset",
    "effective_l",
]

log = logging.getLogger(__name__)

DEFAULT_SEARCH_CAP = 12


@dataclass(frozen=True)
class QuantizedSeries:
    series: tuple
    grid_width: float
    source_error: float


@dataclass(frozen=True)
class ProfileSet:
    profiles: frozenset  # of tuples ((min_rank, max_rank), ...) of length l
    alphabet_size: int
    l: int

    def __len__(self):
        return len(self.profiles)


def effective_l(l: int) -> int:
    """Queries of complexity 1 or 2 are lifted to 3 by repeating their last value."""
    return max(l, 3)


def _round_up(v: float, g: float) -> float:
    q = math.ceil(v / g)
    if q * g < v:
        q += 1
    elif (q - 1) * g >= v:
        q -= 1
    return q * g


def reduce_value_domain(x: Sequence[float], l: int, eps: float) -> QuantizedSeries:
    """Round every entry up to the next multiple of ``eps * delta``.

    ``delta`` is the minimum ``l``-simplification error of ``x``.  A zero
    error leaves ``x`` untouched.
    """
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    x = tuple(float(v) for v in x)
    delta = min_error_simplification(x, l).error
    if delta == 0:
        return QuantizedSeries(x, 0.0, 0.0)
    g = eps * delta
    return QuantizedSeries(tuple(_round_up(v, g) for v in x), g, delta)


def _check_traversal(t, m: int, l: int):
    if not t or t[0] != (0, 0) or t[-1] != (m - 1, l - 1):
        raise ValueError(f"traversal must run from (0, 0) to ({m - 1}, {l - 1})")
    for (i, j), (a, b) in zip(t, t[1:]):
        if (a - i, b - j) not in ((1, 0), (0, 1), (1, 1)):
            raise ValueError(f"invalid traversal step {(i, j)} -> {(a, b)}")


def traversal_sectors(x: Sequence[float], l: int, t) -> tuple:
    """Values of ``x`` matched to each of the ``l`` query positions by ``t``."""
    _check_traversal(t, len(x), l)
    sectors = [set() for _ in range(l)]
    for i, j in t:
        sectors[j].add(x[i])
    return tuple(frozenset(s) for s in sectors)


def assignment_dp(x: Sequence[float], p_values, shared: bool = True) -> bool:
    """Decide whether some traversal realizes the given per-sector (min, max) values.

    ``shared=False`` restricts sectors to disjoint blocks of ``x``; the
    default also allows consecutive sectors to share their boundary entry,
    which every traversal with a horizontal step produces.
    """
    present = set(x)
    mins, maxs = [], []
    for lo, hi in p_values:
        if lo not in present or hi not in present:
            raise ValueError(f"profile value pair {(lo, hi)} not drawn from the series")
        if lo > hi:
            raise ValueError(f"profile pair {(lo, hi)} has min > max")
        mins.append(lo)
        maxs.append(hi)
    return bool(_kernels.assignment_dp(x, mins, maxs, shared))


def _as_profileset(arr: np.ndarray, r: int, l: int) -> ProfileSet:
    rows = arr.reshape(-1, l, 2).tolist()
    return ProfileSet(frozenset(tuple(map(tuple, p)) for p in rows), r, l)


def profile_set(x: Sequence[float], l: int) -> ProfileSet:
    """All l-profiles of ``x``, as rank pairs."""
    rs = rank_sequence(x)
    arr = _kernels.profile_array(rs.ranks, rs.alphabet_size, l)
    return _as_profileset(arr, rs.alphabet_size, l)


def brute_profile_set(
    x: Sequence[float], l: int, cap: int = DEFAULT_TRAVERSAL_CAP
) -> ProfileSet:
    """Profiles read off every traversal directly."""
    rs = rank_sequence(x)
    ranks = rs.ranks
    found = set()
    for t in enumerate_traversals(len(x), l, cap):
        lo = [None] * l
        hi = [None] * l
        for i, j in t:
            v = ranks[i]
            if lo[j] is None or v < lo[j]:
                lo[j] = v
            if hi[j] is None or v > hi[j]:
                hi[j] = v
        found.add(tuple(zip(lo, hi)))
    return ProfileSet(frozenset(found), rs.alphabet_size, l)


def _range_summaries(ranks):
    # (min, max) of every prefix, every contiguous run, and every suffix
    n = len(ranks)
    prefix, runs, suffix = set(), set(), set()
    for a in range(n):
        lo = hi = ranks[a]
        for b in range(a, n):
            v = ranks[b]
            lo = v if v < lo else lo
            hi = v if v > hi else hi
            runs.add((lo, hi))
            if a == 0:
                prefix.add((lo, hi))
            if b == n - 1:
                suffix.add((lo, hi))
    return prefix, runs, suffix


def shortest_equivalent(ranks: Sequence[int], r: int, l: int, cap: int):
    """Shortest rank sequence with the same l-profile set as ``ranks``.

    Candidates are surjective onto ``1..r``, free of consecutive repeats, and
    visited by increasing length and then lexicographically; the first match
    is returned.  Requires ``l >= 3`` and duplicate-free, surjective
    ``ranks``.  Returns ``None`` when no match of length ``<= cap`` exists.

    Prefixes are pruned with necessary conditions: with three or more
    sectors the profile set fixes the set of (min, max) ranges of all
    prefixes (first sector), of all contiguous runs (second sector) and of
    all suffixes (last sector).
    """
    ranks = tuple(int(v) for v in ranks)
    if l < 3:
        raise ValueError("the search needs at least three sectors")
    target = _kernels.profile_array(ranks, r, l)
    tables = []
    for ranges in _range_summaries(ranks):
        table = np.zeros((r + 1, r + 1), dtype=np.uint8)
        for lo, hi in ranges:
            table[lo, hi] = 1
        tables.append(table)
    for length in range(r, min(cap, len(ranks)) + 1):
        found = _kernels.search_length(
            ranks[0], ranks[-1], r, l, length, *tables, target
        )
        if found is not None:
            return found
    return None


class ReductionCache:
    """Thread-safe memo of ``(rank sequence, l) -> reduced rank sequence``.

    Entries are immutable once written; concurrent duplicate computation of
    one key is harmless because the search is deterministic.
    """

    def __init__(self):
        self._entries: dict = {}
        self._overruns: set = set()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def __len__(self):
        return len(self._entries)

    def __contains__(self, key):
        return key in self._entries

    def get(self, ranks: tuple, l: int):
        with self._lock:
            value = self._entries.get((ranks, l))
            if value is not None:
                self.hits += 1
            return value

    def put(self, ranks: tuple, l: int, value: tuple):
        with self._lock:
            self._entries[(ranks, l)] = value

    def known_overrun(self, ranks: tuple, l: int, cap: int) -> bool:
        with self._lock:
            hit = (ranks, l, cap) in self._overruns
            if hit:
                self.hits += 1
            return hit

    def resolved(self, ranks: tuple, l: int, cap: int) -> bool:
        """Whether a lookup would answer without searching (not counted as a hit)."""
        with self._lock:
            return (ranks, l) in self._entries or (ranks, l, cap) in self._overruns

    def mark_overrun(self, ranks: tuple, l: int, cap: int):
        with self._lock:
            self._overruns.add((ranks, l, cap))

    def items(self):
        with self._lock:
            return sorted(self._entries.items())

    def dumps(self) -> str:
        lines = []
        for (key, l), value in self.items():
            r = max(key)
            lines.append(
                f"{r},{l}:{' '.join(map(str, key))} -> {' '.join(map(str, value))}\n"
            )
        return "".join(lines)

    def save(self, path):
        """Write all entries atomically (temp file then rename)."""
        path = os.fspath(path)
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".klcache-")
        with os.fdopen(fd, "w") as fh:
            fh.write(self.dumps())
        os.replace(tmp, path)

    def loads(self, text: str) -> int:
        """Merge entries from ``text``; malformed lines are skipped with a warning."""
        added = 0
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            try:
                head, body = line.split(":", 1)
                r_text, l_text = head.split(",")
                r, l = int(r_text), int(l_text)
                lhs, rhs = body.split("->")
                key = tuple(int(v) for v in lhs.split())
                value = tuple(int(v) for v in rhs.split())
                if not key or not value:
                    raise ValueError("empty rank sequence")
                if set(key) != set(range(1, r + 1)) or set(value) != set(key):
                    raise ValueError("rank sequences do not match the alphabet size")
            except ValueError as exc:
                log.warning("skipping malformed cache line %d: %s", lineno, exc)
                continue
            self.put(key, l, value)
            added += 1
        return added

    @classmethod
    def load(cls, path) -> "ReductionCache":
        cache = cls()
        with open(path) as fh:
            cache.loads(fh.read())
        return cache


@dataclass(frozen=True)
class Reduction:
    series: tuple
    quantized: QuantizedSeries
    ranks: tuple
    cap_exceeded: bool = False
    cache_hit: bool = False

    @property
    def warning(self):
        if self.cap_exceeded:
            return (
                f"no equivalent series of complexity <= cap found; "
                f"kept {len(self.series)} values"
            )
        return None


def _prepare(x, l, eps):
    le = effective_l(l)
    quantized = reduce_value_domain(x, le, eps)
    canon = canonicalize(quantized.series)
    return le, quantized, canon, rank_sequence(canon), distinct_sorted(canon)


def _finish(prep, found, cache_hit) -> Reduction:
    le, quantized, canon, rs, levels = prep
    if found is None:
        return Reduction(canon, quantized, rs.ranks, cap_exceeded=True, cache_hit=cache_hit)
    z = apply_values(RankSequence(found, rs.alphabet_size), levels)
    return Reduction(z, quantized, found, cache_hit=cache_hit)


def _lookup(cache, prep, cap):
    # (hit, value): value None with hit=True means a recorded overrun
    le, _, _, rs, _ = prep
    cached = cache.get(rs.ranks, le)
    if cached is not None:
        return True, cached
    if cache.known_overrun(rs.ranks, le, cap):
        return True, None
    return False, None


def _search(cache, prep, cap):
    le, _, _, rs, _ = prep
    cache.misses += 1
    found = shortest_equivalent(rs.ranks, rs.alphabet_size, le, cap)
    if found is None:
        cache.mark_overrun(rs.ranks, le, cap)
    else:
        cache.put(rs.ranks, le, found)
    return found


def complexity_reduction(
    x: Sequence[float],
    l: int,
    eps: float,
    cap: int = DEFAULT_SEARCH_CAP,
    cache: ReductionCache | None = None,
) -> Reduction:
    """Replace ``x`` by a short series with (1 +- eps)-equal distances to all
    complexity-``l`` series.

    When no equivalent rank sequence of length ``<= cap`` exists the
    canonicalized quantized series is returned with ``cap_exceeded`` set;
    distances stay within the same bounds, only the complexity bound is lost.
    """
    if cache is None:
        cache = ReductionCache()
    prep = _prepare(x, l, eps)
    hit, value = _lookup(cache, prep, cap)
    if not hit:
        value = _search(cache, prep, cap)
    return _finish(prep, value, hit)


def reduce_dataset(
    P: Iterable[Sequence[float]],
    l: int,
    eps: float,
    cap: int = DEFAULT_SEARCH_CAP,
    cache: ReductionCache | None = None,
    executor=None,
) -> list:
    """Reduce every series of ``P`` with one shared cache; order is preserved.

    With an ``executor`` only the searches for distinct uncached rank
    sequences run concurrently; hit accounting follows input order, so
    results and statistics do not depend on the number of workers.
    """
    if cache is None:
        cache = ReductionCache()
    mapper = executor.map if executor is not None else map
    preps = list(mapper(lambda x: _prepare(x, l, eps), list(P)))
    pending = {}
    for prep in preps:
        key = (prep[3].ranks, prep[0])
        if key not in pending and not _peek(cache, prep, cap):
            pending[key] = prep
    found = dict(zip(pending, mapper(lambda p: _search(cache, p, cap), pending.values())))
    out = []
    fresh = set()
    for prep in preps:
        key = (prep[3].ranks, prep[0])
        if key in found and key not in fresh:
            fresh.add(key)
            out.append(_finish(prep, found[key], False))
        else:
            hit, value = _lookup(cache, prep, cap)
            out.append(_finish(prep, value, hit))
    return out


def _peek(cache, prep, cap) -> bool:
    le, _, _, rs, _ = prep
    return cache.resolved(rs.ranks, le, cap)
