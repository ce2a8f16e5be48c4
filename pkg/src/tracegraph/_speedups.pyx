# cython: boundscheck=False, wraparound=False, cdivision=True
# Compiled segment/scatter kernels. Must stay bit-for-bit equivalent to
# tracegraph._kernels_py: both accumulate in ascending element order.

import numpy as np

cimport numpy as cnp

cnp.import_array()


def seg_sum(double[:, ::1] values, cnp.int64_t[::1] seg, Py_ssize_t nseg):
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t c = values.shape[1]
    out_arr = np.zeros((nseg, c), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, s
    for i in range(n):
        s = seg[i]
        for j in range(c):
            out[s, j] += values[i, j]
    return out_arr


def seg_max(double[:, ::1] values, cnp.int64_t[::1] seg, Py_ssize_t nseg):
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t c = values.shape[1]
    out_arr = np.full((nseg, c), -np.inf, dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, s
    cdef double v
    for i in range(n):
        s = seg[i]
        for j in range(c):
            v = values[i, j]
            if v > out[s, j]:
                out[s, j] = v
    return out_arr


def row_scatter_add(double[:, ::1] values, cnp.int64_t[::1] idx, Py_ssize_t nrows):
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t c = values.shape[1]
    out_arr = np.zeros((nrows, c), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, r
    for i in range(n):
        r = idx[i]
        for j in range(c):
            out[r, j] += values[i, j]
    return out_arr
