"""Pure-Python implementations of the hot kernels.

These are the reference versions; ``_ckernels.pyx`` mirrors them line for
line.  Both backends must return identical results on every input.
"""

import numpy as np

BACKEND = "python"


def frechet(x, y):
    """Discrete Frechet distance with two rolling rows over the shorter series."""
    if len(x) < len(y):
        x, y = y, x
    n = len(y)
    x0 = x[0]
    prev = [0.0] * n
    acc = abs(x0 - y[0])
    prev[0] = acc
    for j in range(1, n):
        d = abs(x0 - y[j])
        if d > acc:
            acc = d
        prev[j] = acc
    for i in range(1, len(x)):
        xi = x[i]
        cur = [0.0] * n
        d = abs(xi - y[0])
        cur[0] = d if d > prev[0] else prev[0]
        for j in range(1, n):
            best = prev[j]
            if cur[j - 1] < best:
                best = cur[j - 1]
            if prev[j - 1] < best:
                best = prev[j - 1]
            d = abs(xi - y[j])
            cur[j] = d if d > best else best
        prev = cur
    return float(prev[n - 1])


def distance_matrix(clients, facilities):
    """Frechet distances between every client series and every facility row."""
    fac = np.asarray(facilities, dtype=np.float64)
    out = np.empty((len(clients), fac.shape[0]), dtype=np.float64)
    rows = [tuple(f) for f in fac.tolist()]
    for i, c in enumerate(clients):
        c = tuple(float(v) for v in c)
        for j, f in enumerate(rows):
            out[i, j] = frechet(c, f)
    return out


def assignment_dp(x, mins, maxs, shared=True):
    """Sector-compatibility tables.

    ``feas[h][t]``: sectors 1..h can be laid over x[0:t] with every sector
    inside its [min, max] window and sectors 1..h-1 attaining both bounds.
    ``hmin``/``hmax`` record whether sector h already attains its bound.
    With ``shared`` the next sector may also start on the last index of the
    previous one (a horizontal traversal step).
    """
    m = len(x)
    L = len(mins)
    feas = [[False] * (m + 1) for _ in range(L + 1)]
    hmin = [[False] * (m + 1) for _ in range(L + 1)]
    hmax = [[False] * (m + 1) for _ in range(L + 1)]
    feas[0][0] = hmin[0][0] = hmax[0][0] = True
    for h in range(1, L + 1):
        lo = mins[h - 1]
        hi = maxs[h - 1]
        f_prev, a_prev, b_prev = feas[h - 1], hmin[h - 1], hmax[h - 1]
        f_cur, a_cur, b_cur = feas[h], hmin[h], hmax[h]
        for t in range(1, m + 1):
            v = x[t - 1]
            if v < lo or v > hi:
                continue
            if f_cur[t - 1]:
                f_cur[t] = True
                a_cur[t] = a_cur[t - 1] or v == lo
                b_cur[t] = b_cur[t - 1] or v == hi
            elif (f_prev[t - 1] and a_prev[t - 1] and b_prev[t - 1]) or (
                shared and f_prev[t] and a_prev[t] and b_prev[t]
            ):
                f_cur[t] = True
                a_cur[t] = v == lo
                b_cur[t] = v == hi
    return feas[L][m] and hmin[L][m] and hmax[L][m]


def _next_row(ranks, complete_prev, lo, hi, shared):
    # One level of the assignment tables; returns the "complete" row
    # (feas and hmin and hmax) for this level.
    m = len(ranks)
    out = [False] * (m + 1)
    f = a = b = False
    for t in range(1, m + 1):
        v = ranks[t - 1]
        if v < lo or v > hi:
            f = a = b = False
            continue
        if f:
            a = a or v == lo
            b = b or v == hi
        elif complete_prev[t - 1] or (shared and complete_prev[t]):
            f = True
            a = v == lo
            b = v == hi
        else:
            continue
        out[t] = a and b
    return out


def profile_array(ranks, r, L, shared=True):
    """All feasible L-profiles of a rank sequence, in lexicographic order.

    Returns an ``(count, 2 * L)`` int array; row ``p`` lists
    ``min_1, max_1, ..., min_L, max_L``.  Profiles are enumerated
    depth-first, one sector at a time, reusing the assignment table rows of
    the shared prefix and pruning prefixes with no completed sector.
    """
    ranks = [int(v) for v in ranks]
    m = len(ranks)
    pairs = [(lo, hi) for lo in range(1, r + 1) for hi in range(lo, r + 1)]
    start = [False] * (m + 1)
    start[0] = True
    found = []
    prefix = []

    def visit(h, row):
        for lo, hi in pairs:
            nxt = _next_row(ranks, row, lo, hi, shared)
            if h == L:
                if nxt[m]:
                    found.append(prefix + [lo, hi])
            elif any(nxt):
                prefix.extend((lo, hi))
                visit(h + 1, nxt)
                del prefix[-2:]

    visit(1, start)
    if not found:
        return np.zeros((0, 2 * L), dtype=np.int32)
    return np.asarray(found, dtype=np.int32)


def profile_equals(ranks, r, L, target, shared=True):
    """True iff the profile array of ``ranks`` equals ``target`` row for row."""
    got = profile_array(ranks, r, L, shared)
    return got.shape == np.shape(target) and np.array_equal(got, target)


def search_length(first, last, r, L, length, prefix_ok, runs_ok, suffix_ok, target):
    """First rank sequence of ``length`` (lexicographic) with profile array ``target``.

    Candidates start with ``first``, end with ``last``, use every rank in
    ``1..r`` and never repeat a rank consecutively.  ``prefix_ok``,
    ``runs_ok`` and ``suffix_ok`` are ``(r + 1) x (r + 1)`` boolean tables of
    the (min, max) ranges allowed for prefixes, contiguous runs and suffixes;
    the suffix table must be matched exactly.  Returns a tuple or ``None``.
    """
    prefix_ok = np.asarray(prefix_ok, dtype=bool).tolist()
    runs_ok = np.asarray(runs_ok, dtype=bool).tolist()
    suffix_ok = np.asarray(suffix_ok, dtype=bool)
    n_suffix = int(suffix_ok.sum())
    suffix_ok = suffix_ok.tolist()
    z = [0] * length
    z[0] = first
    seen = [0] * (r + 1)
    seen[first] = 1
    plo = [first] * length
    phi = [first] * length

    def leaf():
        lo = hi = z[-1]
        got = set()
        for j in range(length - 1, -1, -1):
            w = z[j]
            if w < lo:
                lo = w
            elif w > hi:
                hi = w
            if not suffix_ok[lo][hi]:
                return False
            got.add((lo, hi))
        return len(got) == n_suffix and profile_equals(z, r, L, target)

    def extend(pos, missing):
        if pos == length:
            return leaf()
        room = length - pos - 1
        prev = z[pos - 1]
        for v in range(1, r + 1):
            if v == prev:
                continue
            if pos == length - 1 and v != last:
                continue
            left = missing - (seen[v] == 0)
            if left > room:
                continue
            a = plo[pos - 1] if plo[pos - 1] < v else v
            b = phi[pos - 1] if phi[pos - 1] > v else v
            if not prefix_ok[a][b]:
                continue
            lo = hi = v
            ok = True
            for j in range(pos - 1, -1, -1):
                w = z[j]
                if w < lo:
                    lo = w
                elif w > hi:
                    hi = w
                if not runs_ok[lo][hi]:
                    ok = False
                    break
            if not ok:
                continue
            z[pos] = v
            plo[pos] = a
            phi[pos] = b
            seen[v] += 1
            if extend(pos + 1, left):
                return True
            seen[v] -= 1
        return False

    if length == 1:
        return (first,) if r == 1 and profile_equals(z, r, L, target) else None
    return tuple(z) if extend(1, r - 1) else None
