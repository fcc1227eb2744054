# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of obstructa.kernels.pure.

Same contract, fixed-width int64 arithmetic.  Callers are responsible for
bounding coefficient growth below 2**62 before choosing this backend.
"""

import numpy as np


def prepare_table(triples, dim):
    trips = sorted((int(i), int(j), int(k), int(c)) for i, j, k, c in triples if c)
    n = len(trips)
    pair_start = np.zeros(dim * dim + 1, dtype=np.int64)
    ks = np.zeros(max(n, 1), dtype=np.int64)
    cs = np.zeros(max(n, 1), dtype=np.int64)
    for t, (i, j, k, c) in enumerate(trips):
        pair_start[i * dim + j + 1] += 1
        ks[t] = k
        cs[t] = c
    np.cumsum(pair_start, out=pair_start)
    return ("cython", pair_start, ks, cs, dim)


cdef inline int _shuffle_sign(unsigned long long I, unsigned long long J) nogil:
    cdef int inv = 0
    cdef unsigned long long j = J, above
    cdef int bit
    while j:
        bit = 0
        while not (j >> bit) & 1:
            bit += 1
        above = I >> (bit + 1)
        while above:
            inv += above & 1
            above >>= 1
        j &= j - 1
    return -1 if inv & 1 else 1


def wedge_int(a_terms, b_terms, handle):
    tag, pair_start_o, ks_o, cs_o, dim_o = handle
    cdef long long[::1] pair_start = pair_start_o
    cdef long long[::1] ks = ks_o
    cdef long long[::1] cs = cs_o
    cdef int dim = dim_o
    cdef int na = len(a_terms), nb = len(b_terms)
    if na == 0 or nb == 0:
        return []
    masks_a_o = np.array([m for m, _ in a_terms], dtype=np.uint64)
    masks_b_o = np.array([m for m, _ in b_terms], dtype=np.uint64)
    coeff_a_o = np.array([list(v) for _, v in a_terms], dtype=np.int64)
    coeff_b_o = np.array([list(v) for _, v in b_terms], dtype=np.int64)
    cdef unsigned long long[::1] masks_a = masks_a_o
    cdef unsigned long long[::1] masks_b = masks_b_o
    cdef long long[:, ::1] ca = coeff_a_o
    cdef long long[:, ::1] cb = coeff_b_o
    cdef dict acc = {}
    cdef int ai, bi, i, j, t, s
    cdef long long x, y, cxy, sx
    cdef unsigned long long ma, mb
    cdef long long[::1] out
    cdef int t0, t1
    for ai in range(na):
        ma = masks_a[ai]
        for bi in range(nb):
            mb = masks_b[bi]
            if ma & mb:
                continue
            s = _shuffle_sign(ma, mb)
            key = ma | mb
            buf = acc.get(key)
            if buf is None:
                buf = np.zeros(dim, dtype=np.int64)
                acc[key] = buf
            out = buf
            for i in range(dim):
                x = ca[ai, i]
                if x == 0:
                    continue
                sx = s * x
                for j in range(dim):
                    y = cb[bi, j]
                    if y == 0:
                        continue
                    t0 = <int> pair_start[i * dim + j]
                    t1 = <int> pair_start[i * dim + j + 1]
                    if t0 == t1:
                        continue
                    cxy = sx * y
                    for t in range(t0, t1):
                        out[ks[t]] += cxy * cs[t]
    result = []
    for key in acc:
        arr = acc[key]
        if np.any(arr):
            result.append((int(key), tuple(int(v) for v in arr)))
    result.sort()
    return result
