# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled minimum-weight search over weight-w message combinations.

Depth-first over row combinations with running partial sums, the leaf
loop aborting as soon as the codeword is heavier than the best so far.
The search itself runs without the GIL so callers can fan out threads.
"""

from libc.stdlib cimport free, malloc

import numpy as np


cdef struct Ctx:
    int K
    int N
    int q
    int w
    int stop_at
    int best
    int done
    long long count
    const int* add
    const int* scaled
    int* acc
    int* bestword


cdef inline void _leaf(Ctx* c, const int* base, int i, int coef_lo, int coef_hi) noexcept nogil:
    cdef int coef, j, wt
    cdef const int* s
    cdef int q = c.q
    cdef int n = c.N
    for coef in range(coef_lo, coef_hi):
        s = c.scaled + (coef * c.K + i) * n
        wt = 0
        for j in range(n):
            if c.add[base[j] * q + s[j]] != 0:
                wt += 1
                if wt >= c.best:
                    break
        c.count += 1
        if wt < c.best:
            c.best = wt
            for j in range(n):
                c.bestword[j] = c.add[base[j] * q + s[j]]
            if wt <= c.stop_at:
                c.done = 1
                return


cdef void _rec(Ctx* c, int depth, int start, int stop) noexcept nogil:
    cdef int* cur = c.acc + depth * c.N
    cdef int* nxt = cur + c.N
    cdef int remaining = c.w - depth
    cdef int i, j, coef
    cdef int coef_hi = 2 if depth == 0 else c.q
    cdef const int* s
    if remaining == 1:
        for i in range(start, stop):
            _leaf(c, cur, i, 1, coef_hi)
            if c.done:
                return
        return
    if stop > c.K - remaining + 1:
        stop = c.K - remaining + 1
    for i in range(start, stop):
        for coef in range(1, coef_hi):
            s = c.scaled + (coef * c.K + i) * c.N
            for j in range(c.N):
                nxt[j] = c.add[cur[j] * c.q + s[j]]
            _rec(c, depth + 1, i + 1, c.K)
            if c.done:
                return


def combo_min_weight(rows, int w, add, mul, int stop_at=0, int first_lo=0, first_hi=None):
    """Return (best weight, a codeword of that weight or None, codewords visited)."""
    rows = np.ascontiguousarray(rows, dtype=np.int32)
    add_arr = np.ascontiguousarray(add, dtype=np.int32)
    mul_arr = np.ascontiguousarray(mul, dtype=np.int32)
    cdef int K = rows.shape[0]
    cdef int N = rows.shape[1]
    cdef int q = add_arr.shape[0]
    cdef int hi = K if first_hi is None else min(int(first_hi), K)
    if w < 1 or w > K or first_lo >= hi:
        return N + 1, None, 0
    scaled_arr = np.ascontiguousarray(mul_arr[:, rows], dtype=np.int32)
    cdef const int[:, ::1] addv = add_arr
    cdef const int[:, :, ::1] scv = scaled_arr
    word = np.zeros(N, dtype=np.int32)
    cdef int[::1] wv = word
    cdef Ctx c
    c.K = K
    c.N = N
    c.q = q
    c.w = w
    c.stop_at = stop_at
    c.best = N + 1
    c.done = 0
    c.count = 0
    c.add = &addv[0, 0]
    c.scaled = &scv[0, 0, 0]
    c.bestword = &wv[0]
    c.acc = <int*> malloc((w + 1) * N * sizeof(int))
    if c.acc == NULL:
        raise MemoryError()
    cdef int j
    try:
        with nogil:
            for j in range(N):
                c.acc[j] = 0
            _rec(&c, 0, first_lo, hi)
    finally:
        free(c.acc)
    if c.best > N:
        return N + 1, None, c.count
    return c.best, word, c.count
