# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same signatures and results as ``_pykernels``."""

from libc.stdint cimport int64_t, uint64_t, uint8_t
from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memcpy, memset

cdef uint64_t MULTIPLIER = 0x2545F4914F6CDD1DULL
cdef int64_t INT64_LIMIT = 0x7FFFFFFFFFFFFFFF


cdef int *_copy_table(table, Py_ssize_t size) except NULL:
    cdef int *out = <int *> malloc(size * sizeof(int))
    cdef Py_ssize_t i
    if out == NULL:
        raise MemoryError()
    for i in range(size):
        out[i] = table[i]
    return out


def count_power(table, int n, int m, int k):
    # every entry of Q**k is bounded by its column sum m**k
    if m ** k > INT64_LIMIT:
        raise OverflowError("Q**k may exceed 64-bit range")
    cdef int *t = _copy_table(table, <Py_ssize_t> n * m)
    cdef Py_ssize_t nn = <Py_ssize_t> n * n
    cdef int64_t *cur = <int64_t *> calloc(nn, sizeof(int64_t))
    cdef int64_t *nxt = <int64_t *> calloc(nn, sizeof(int64_t))
    cdef int64_t *tmp
    cdef int64_t *src
    cdef int64_t *dst
    cdef int step, x, l, y, j
    try:
        if cur == NULL or nxt == NULL:
            raise MemoryError()
        for x in range(n):
            cur[x * n + x] = 1
        with nogil:
            for step in range(k):
                memset(nxt, 0, nn * sizeof(int64_t))
                for x in range(n):
                    src = cur + <Py_ssize_t> x * n
                    for l in range(m):
                        y = t[l * n + x]
                        dst = nxt + <Py_ssize_t> y * n
                        for j in range(n):
                            dst[j] += src[j]
                tmp = cur
                cur = nxt
                nxt = tmp
        return [cur[i] for i in range(nn)]
    finally:
        free(t)
        free(cur)
        free(nxt)


def pattern_counts(table, int n, int m, int k, sources=None, int first=-1):
    if m ** k > INT64_LIMIT:
        raise OverflowError("pattern counts may exceed 64-bit range")
    if sources is None:
        sources = range(n)
    cdef int *t = _copy_table(table, <Py_ssize_t> n * m)
    cdef int64_t *col = <int64_t *> malloc(n * sizeof(int64_t))
    cdef int *states = <int *> malloc(k * sizeof(int))
    cdef int *choice = <int *> malloc(k * sizeof(int))
    cdef int lo0 = first if first >= 0 else 0
    cdef int hi0 = first + 1 if first >= 0 else m
    cdef int s, c, d, hi, x, l, last = k - 1
    counts = [0] * (n * n)
    try:
        if col == NULL or states == NULL or choice == NULL:
            raise MemoryError()
        for s in sources:
            memset(col, 0, n * sizeof(int64_t))
            with nogil:
                if k == 1:
                    for c in range(lo0, hi0):
                        col[t[c * n + s]] += 1
                else:
                    states[0] = s
                    choice[0] = lo0
                    d = 0
                    while d >= 0:
                        hi = hi0 if d == 0 else m
                        c = choice[d]
                        if c >= hi:
                            d -= 1
                            continue
                        choice[d] = c + 1
                        x = t[c * n + states[d]]
                        if d + 1 == last:
                            for l in range(m):
                                col[t[l * n + x]] += 1
                        else:
                            d += 1
                            states[d] = x
                            choice[d] = 0
            for x in range(n):
                if col[x]:
                    counts[x * n + s] += col[x]
        return counts
    finally:
        free(t)
        free(col)
        free(states)
        free(choice)


def reach_closure(table, int n, int m):
    cdef int *t = _copy_table(table, <Py_ssize_t> n * m)
    cdef Py_ssize_t nn = <Py_ssize_t> n * n
    cdef uint8_t *r = <uint8_t *> calloc(nn, 1)
    cdef int nbytes = (n + 7) // 8
    cdef uint8_t *packed = <uint8_t *> malloc(nbytes if nbytes > 0 else 1)
    cdef int j, x, y, z, l, changed
    cdef uint8_t *row
    try:
        if r == NULL or packed == NULL:
            raise MemoryError()
        with nogil:
            for x in range(n):
                for l in range(m):
                    r[<Py_ssize_t> x * n + t[l * n + x]] = 1
            changed = 1
            while changed:
                changed = 0
                for j in range(n):
                    row = r + <Py_ssize_t> j * n
                    for y in range(n):
                        if row[y]:
                            for l in range(m):
                                z = t[l * n + y]
                                if not row[z]:
                                    row[z] = 1
                                    changed = 1
        out = []
        for j in range(n):
            memset(packed, 0, nbytes)
            row = r + <Py_ssize_t> j * n
            for y in range(n):
                if row[y]:
                    packed[y >> 3] |= <uint8_t> (1 << (y & 7))
            out.append(int.from_bytes((<char *> packed)[:nbytes], "little"))
        return out
    finally:
        free(t)
        free(r)
        free(packed)


def lris_mask(table, int n, int m, mask):
    cdef int *t = _copy_table(table, <Py_ssize_t> n * m)
    cdef uint8_t *cur = <uint8_t *> malloc(n if n > 0 else 1)
    cdef uint8_t *nxt = <uint8_t *> malloc(n if n > 0 else 1)
    cdef uint8_t *tmp
    cdef int x, l, rounds = 0, changed
    cdef uint8_t keep
    try:
        if cur == NULL or nxt == NULL:
            raise MemoryError()
        for x in range(n):
            cur[x] = 1 if mask[x] else 0
        with nogil:
            while True:
                changed = 0
                for x in range(n):
                    keep = cur[x]
                    if keep:
                        for l in range(m):
                            if not cur[t[l * n + x]]:
                                keep = 0
                                break
                    nxt[x] = keep
                    if keep != cur[x]:
                        changed = 1
                if not changed:
                    break
                tmp = cur
                cur = nxt
                nxt = tmp
                rounds += 1
        return [bool(cur[x]) for x in range(n)], rounds
    finally:
        free(t)
        free(cur)
        free(nxt)


cdef inline uint64_t _next(uint64_t *state) noexcept nogil:
    cdef uint64_t x = state[0]
    x ^= x >> 12
    x ^= x << 25
    x ^= x >> 27
    state[0] = x
    return x * MULTIPLIER


def sample_hits(table, int n, int m, int x0, target, int k, long long samples, thresholds, uint64_t state):
    cdef int *t = _copy_table(table, <Py_ssize_t> n * m)
    cdef uint8_t *tgt = <uint8_t *> malloc(n if n > 0 else 1)
    cdef uint64_t *thr = <uint64_t *> malloc(m * sizeof(uint64_t))
    cdef long long s, hits = 0
    cdef int x, step, j
    cdef uint64_t u
    try:
        if tgt == NULL or thr == NULL:
            raise MemoryError()
        for x in range(n):
            tgt[x] = 1 if target[x] else 0
        for j in range(m):
            thr[j] = thresholds[j]
        with nogil:
            for s in range(samples):
                x = x0
                for step in range(k):
                    u = _next(&state) >> 11
                    j = 0
                    while j < m - 1 and u >= thr[j]:
                        j += 1
                    x = t[j * n + x]
                if tgt[x]:
                    hits += 1
        return hits, state
    finally:
        free(t)
        free(tgt)
        free(thr)
