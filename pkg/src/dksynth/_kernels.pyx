# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; pure-Python twins live in ``_kernels_py``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern int __builtin_popcountll(unsigned long long) nogil


cdef inline long long _mod(long long x, long long k) nogil:
    x %= k
    return x + k if x < 0 else x


def fwht_mod(values, long long k):
    cdef cnp.int64_t[::1] v = np.ascontiguousarray(values, dtype=np.int64).copy()
    cdef Py_ssize_t size = v.shape[0], h = 1, start, i
    cdef long long u, w
    for i in range(size):
        v[i] = _mod(v[i], k)
    while h < size:
        for start in range(0, size, 2 * h):
            for i in range(start, start + h):
                u = v[i]
                w = v[i + h]
                v[i] = _mod(u + w, k)
                v[i + h] = _mod(u - w, k)
        h *= 2
    return np.asarray(v)


def run_circuit_all(ops, ctrl, r1, r2, init, int n, int k):
    cdef cnp.int64_t[::1] op_v = np.ascontiguousarray(ops, dtype=np.int64)
    cdef cnp.int64_t[::1] c_v = np.ascontiguousarray(ctrl, dtype=np.int64)
    cdef cnp.int64_t[::1] p_v = np.ascontiguousarray(r1, dtype=np.int64)
    cdef cnp.int64_t[::1] q_v = np.ascontiguousarray(r2, dtype=np.int64)
    cdef cnp.int64_t[::1] init_v = np.ascontiguousarray(init, dtype=np.int64)
    out_arr = np.empty((1 << n, k), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef Py_ssize_t ngates = op_v.shape[0], idx, j, r
    cdef long long bits, tmp, c
    for idx in range(1 << n):
        bits = idx
        for r in range(k):
            out[idx, r] = init_v[r]
        for j in range(ngates):
            c = n - 1 - c_v[j]
            if op_v[j] == 0:
                bits ^= (1LL << c)
            elif op_v[j] == 1 or (bits >> c) & 1:
                tmp = out[idx, p_v[j]]
                out[idx, p_v[j]] = out[idx, q_v[j]]
                out[idx, q_v[j]] = tmp
    return out_arr


def fold_cascade_all(kinds, exps, masks, int n, long long k):
    cdef cnp.int64_t[::1] kind_v = np.ascontiguousarray(kinds, dtype=np.int64)
    cdef cnp.int64_t[::1] exp_v = np.ascontiguousarray(exps, dtype=np.int64)
    cdef cnp.int64_t[::1] mask_v = np.ascontiguousarray(masks, dtype=np.int64)
    out_arr = np.empty((1 << n, 2), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef Py_ssize_t ncells = kind_v.shape[0], idx, j
    cdef unsigned long long probe
    cdef long long shift
    cdef int parity
    for idx in range(1 << n):
        probe = <unsigned long long>idx | (1ULL << n)
        shift = 0
        parity = 0
        for j in range(ncells):
            if kind_v[j] == 0:
                shift += -exp_v[j] if parity else exp_v[j]
            else:
                parity ^= __builtin_popcountll(probe & <unsigned long long>mask_v[j]) & 1
        out[idx, 0] = _mod(shift, k)
        out[idx, 1] = parity
    return out_arr
