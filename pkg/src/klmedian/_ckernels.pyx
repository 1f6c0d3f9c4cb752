# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot kernels; see ``_pykernels`` for the reference."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, realloc, free
from libc.math cimport fabs

cnp.import_array()

BACKEND = "cython"


cdef double _frechet(const double* x, Py_ssize_t m, const double* y, Py_ssize_t n,
                     double* prev, double* cur) noexcept nogil:
    # caller guarantees n <= m and prev/cur hold n doubles
    cdef Py_ssize_t i, j
    cdef double acc, d, best, xi
    cdef double* tmp
    acc = fabs(x[0] - y[0])
    prev[0] = acc
    for j in range(1, n):
        d = fabs(x[0] - y[j])
        if d > acc:
            acc = d
        prev[j] = acc
    for i in range(1, m):
        xi = x[i]
        d = fabs(xi - y[0])
        cur[0] = d if d > prev[0] else prev[0]
        for j in range(1, n):
            best = prev[j]
            if cur[j - 1] < best:
                best = cur[j - 1]
            if prev[j - 1] < best:
                best = prev[j - 1]
            d = fabs(xi - y[j])
            cur[j] = d if d > best else best
        tmp = prev
        prev = cur
        cur = tmp
    return prev[n - 1]


def frechet(x, y):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t m = xv.shape[0], n = yv.shape[0]
    cdef double* buf
    cdef double out
    if m < n:
        xv, yv = yv, xv
        m, n = n, m
    buf = <double*> malloc(2 * n * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    with nogil:
        out = _frechet(&xv[0], m, &yv[0], n, buf, buf + n)
    free(buf)
    return float(out)


def distance_matrix(clients, facilities):
    cdef const double[:, ::1] fac = np.ascontiguousarray(facilities, dtype=np.float64)
    cdef Py_ssize_t nf = fac.shape[0], L = fac.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((len(clients), nf), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef const double[::1] cv
    cdef Py_ssize_t i, j, m, width
    cdef double* buf
    for i, c in enumerate(clients):
        cv = np.ascontiguousarray(c, dtype=np.float64)
        m = cv.shape[0]
        width = m if m < L else L
        buf = <double*> malloc(2 * width * sizeof(double) + 1)
        if buf == NULL:
            raise MemoryError()
        with nogil:
            for j in range(nf):
                if m >= L:
                    ov[i, j] = _frechet(&cv[0], m, &fac[j, 0], L, buf, buf + width)
                else:
                    ov[i, j] = _frechet(&fac[j, 0], L, &cv[0], m, buf, buf + width)
        free(buf)
    return out


def assignment_dp(x, mins, maxs, bint shared=True):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] lov = np.ascontiguousarray(mins, dtype=np.float64)
    cdef const double[::1] hiv = np.ascontiguousarray(maxs, dtype=np.float64)
    cdef Py_ssize_t m = xv.shape[0], L = lov.shape[0], h, t
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] feas = np.zeros((L + 1, m + 1), dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] hmin = np.zeros((L + 1, m + 1), dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] hmax = np.zeros((L + 1, m + 1), dtype=np.uint8)
    cdef double v, lo, hi
    feas[0, 0] = hmin[0, 0] = hmax[0, 0] = 1
    for h in range(1, L + 1):
        lo = lov[h - 1]
        hi = hiv[h - 1]
        for t in range(1, m + 1):
            v = xv[t - 1]
            if v < lo or v > hi:
                continue
            if feas[h, t - 1]:
                feas[h, t] = 1
                hmin[h, t] = hmin[h, t - 1] or v == lo
                hmax[h, t] = hmax[h, t - 1] or v == hi
            elif (feas[h - 1, t - 1] and hmin[h - 1, t - 1] and hmax[h - 1, t - 1]) or (
                shared and feas[h - 1, t] and hmin[h - 1, t] and hmax[h - 1, t]
            ):
                feas[h, t] = 1
                hmin[h, t] = v == lo
                hmax[h, t] = v == hi
    return bool(feas[L, m] and hmin[L, m] and hmax[L, m])


cdef bint _next_row(const int* ranks, Py_ssize_t m, const char* prev, char* out,
                    int lo, int hi, bint shared) noexcept nogil:
    cdef Py_ssize_t t
    cdef bint f = 0, a = 0, b = 0, any_ = 0
    cdef int v
    out[0] = 0
    for t in range(1, m + 1):
        out[t] = 0
        v = ranks[t - 1]
        if v < lo or v > hi:
            f = 0
            a = 0
            b = 0
            continue
        if f:
            a = a or v == lo
            b = b or v == hi
        elif prev[t - 1] or (shared and prev[t]):
            f = 1
            a = v == lo
            b = v == hi
        else:
            continue
        if a and b:
            out[t] = 1
            any_ = 1
    return any_


cdef Py_ssize_t _profiles(const int* ranks, Py_ssize_t m, int r, Py_ssize_t L, bint shared,
                          int** store, Py_ssize_t* cap, const int* target,
                          Py_ssize_t n_target) noexcept nogil:
    # Depth-first enumeration in lexicographic order.  In collect mode
    # (target == NULL) profiles are appended to *store; in compare mode the
    # stream is matched against target and -1 is returned on the first
    # mismatch.  Returns the profile count, or -2 on allocation failure.
    cdef Py_ssize_t P = r * (r + 1) // 2
    cdef Py_ssize_t h, k, count = 0, row = m + 1
    cdef int* los = <int*> malloc(P * sizeof(int))
    cdef int* his = <int*> malloc(P * sizeof(int))
    cdef Py_ssize_t* choice = <Py_ssize_t*> malloc((L + 1) * sizeof(Py_ssize_t))
    cdef char* rows = <char*> malloc((L + 1) * row * sizeof(char))
    cdef int* grown
    cdef int lo, hi
    cdef bint ok
    if los == NULL or his == NULL or choice == NULL or rows == NULL:
        free(los); free(his); free(choice); free(rows)
        return -2
    k = 0
    for lo in range(1, r + 1):
        for hi in range(lo, r + 1):
            los[k] = lo
            his[k] = hi
            k += 1
    for k in range(row):
        rows[k] = 0
    rows[0] = 1
    h = 1
    choice[1] = 0
    while h >= 1:
        if choice[h] == P:
            h -= 1
            if h >= 1:
                choice[h] += 1
            continue
        ok = _next_row(ranks, m, rows + (h - 1) * row, rows + h * row,
                       los[choice[h]], his[choice[h]], shared)
        if h == L:
            if rows[h * row + m]:
                if target != NULL:
                    if count >= n_target:
                        count = -1
                        break
                    for k in range(L):
                        if target[count * 2 * L + 2 * k] != los[choice[k + 1]] or \
                                target[count * 2 * L + 2 * k + 1] != his[choice[k + 1]]:
                            count = -1
                            break
                    if count == -1:
                        break
                else:
                    if (count + 1) * 2 * L > cap[0]:
                        cap[0] = 2 * cap[0] + 2 * L
                        grown = <int*> realloc(store[0], cap[0] * sizeof(int))
                        if grown == NULL:
                            count = -2
                            break
                        store[0] = grown
                    for k in range(L):
                        store[0][count * 2 * L + 2 * k] = los[choice[k + 1]]
                        store[0][count * 2 * L + 2 * k + 1] = his[choice[k + 1]]
                count += 1
            choice[h] += 1
        elif ok:
            h += 1
            choice[h] = 0
        else:
            choice[h] += 1
    free(los); free(his); free(choice); free(rows)
    return count


def profile_array(ranks, int r, Py_ssize_t L, bint shared=True):
    cdef const int[::1] rv = np.ascontiguousarray(ranks, dtype=np.intc)
    cdef Py_ssize_t cap = 64 * L
    cdef int* store = <int*> malloc(cap * sizeof(int))
    cdef Py_ssize_t count
    if store == NULL:
        raise MemoryError()
    with nogil:
        count = _profiles(&rv[0], rv.shape[0], r, L, shared, &store, &cap, NULL, 0)
    if count < 0:
        free(store)
        raise MemoryError()
    out = np.empty((count, 2 * L), dtype=np.int32)
    cdef int[:, ::1] ov = out
    cdef Py_ssize_t i, j
    for i in range(count):
        for j in range(2 * L):
            ov[i, j] = store[i * 2 * L + j]
    free(store)
    return out


def profile_equals(ranks, int r, Py_ssize_t L, target, bint shared=True):
    cdef const int[::1] rv = np.ascontiguousarray(ranks, dtype=np.intc)
    cdef const int[:, ::1] tv = np.ascontiguousarray(target, dtype=np.intc).reshape(-1, 2 * L)
    cdef Py_ssize_t n_target = tv.shape[0], count
    cdef Py_ssize_t cap = 0
    cdef const int* tp = &tv[0, 0] if n_target > 0 else NULL
    if n_target == 0:
        return profile_array(ranks, r, L, shared).shape[0] == 0
    with nogil:
        count = _profiles(&rv[0], rv.shape[0], r, L, shared, NULL, &cap, tp, n_target)
    if count == -2:
        raise MemoryError()
    return count == n_target


cdef struct _Search:
    int* z
    int* seen
    int* plo
    int* phi
    const unsigned char* prefix_ok
    const unsigned char* runs_ok
    const unsigned char* suffix_ok
    unsigned char* suffix_seen
    int n_suffix
    int r
    int L
    int length
    int last
    const int* target
    Py_ssize_t n_target
    int failed


cdef bint _search_leaf(_Search* s) noexcept nogil:
    cdef int j, w, lo, hi, w1 = s.r + 1, got = 0
    cdef Py_ssize_t k, cnt
    cdef int* store = NULL
    cdef Py_ssize_t cap = 0
    for k in range(w1 * w1):
        s.suffix_seen[k] = 0
    lo = hi = s.z[s.length - 1]
    for j in range(s.length - 1, -1, -1):
        w = s.z[j]
        if w < lo:
            lo = w
        elif w > hi:
            hi = w
        if not s.suffix_ok[lo * w1 + hi]:
            return 0
        if not s.suffix_seen[lo * w1 + hi]:
            s.suffix_seen[lo * w1 + hi] = 1
            got += 1
    if got != s.n_suffix:
        return 0
    cnt = _profiles(s.z, s.length, s.r, s.L, 1, &store, &cap, s.target, s.n_target)
    if cnt == -2:
        s.failed = 1
        return 0
    return cnt == s.n_target


cdef bint _search_extend(_Search* s, int pos, int missing) noexcept nogil:
    cdef int v, a, b, lo, hi, j, w, left, room, prev, w1 = s.r + 1
    cdef bint ok
    if pos == s.length:
        return _search_leaf(s)
    room = s.length - pos - 1
    prev = s.z[pos - 1]
    for v in range(1, s.r + 1):
        if v == prev:
            continue
        if pos == s.length - 1 and v != s.last:
            continue
        left = missing - (1 if s.seen[v] == 0 else 0)
        if left > room:
            continue
        a = s.plo[pos - 1] if s.plo[pos - 1] < v else v
        b = s.phi[pos - 1] if s.phi[pos - 1] > v else v
        if not s.prefix_ok[a * w1 + b]:
            continue
        lo = v
        hi = v
        ok = 1
        for j in range(pos - 1, -1, -1):
            w = s.z[j]
            if w < lo:
                lo = w
            elif w > hi:
                hi = w
            if not s.runs_ok[lo * w1 + hi]:
                ok = 0
                break
        if not ok:
            continue
        s.z[pos] = v
        s.plo[pos] = a
        s.phi[pos] = b
        s.seen[v] += 1
        if _search_extend(s, pos + 1, left):
            return 1
        if s.failed:
            return 0
        s.seen[v] -= 1
    return 0


def search_length(int first, int last, int r, int L, int length,
                  prefix_ok, runs_ok, suffix_ok, target):
    cdef const unsigned char[::1] pv = np.ascontiguousarray(prefix_ok, dtype=np.uint8).ravel()
    cdef const unsigned char[::1] rv = np.ascontiguousarray(runs_ok, dtype=np.uint8).ravel()
    cdef const unsigned char[::1] sv = np.ascontiguousarray(suffix_ok, dtype=np.uint8).ravel()
    cdef const int[:, ::1] tv = np.ascontiguousarray(target, dtype=np.intc).reshape(-1, 2 * L)
    cdef _Search s
    cdef bint found
    cdef int i
    if tv.shape[0] == 0:
        return None
    s.z = <int*> malloc(length * sizeof(int))
    s.seen = <int*> malloc((r + 1) * sizeof(int))
    s.plo = <int*> malloc(length * sizeof(int))
    s.phi = <int*> malloc(length * sizeof(int))
    s.suffix_seen = <unsigned char*> malloc((r + 1) * (r + 1))
    if s.z == NULL or s.seen == NULL or s.plo == NULL or s.phi == NULL or s.suffix_seen == NULL:
        free(s.z); free(s.seen); free(s.plo); free(s.phi); free(s.suffix_seen)
        raise MemoryError()
    for i in range(r + 1):
        s.seen[i] = 0
    s.z[0] = first
    s.plo[0] = first
    s.phi[0] = first
    s.seen[first] = 1
    s.prefix_ok = &pv[0]
    s.runs_ok = &rv[0]
    s.suffix_ok = &sv[0]
    s.n_suffix = int(np.count_nonzero(suffix_ok))
    s.r = r
    s.L = L
    s.length = length
    s.last = last
    s.target = &tv[0, 0]
    s.n_target = tv.shape[0]
    s.failed = 0
    with nogil:
        if length == 1:
            found = r == 1 and _search_leaf(&s)
        else:
            found = _search_extend(&s, 1, r - 1)
    out = tuple(s.z[i] for i in range(length)) if found else None
    failed = s.failed
    free(s.z); free(s.seen); free(s.plo); free(s.phi); free(s.suffix_seen)
    if failed:
        raise MemoryError()
    return out
