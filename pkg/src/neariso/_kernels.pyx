# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled pairwise reduction kernels.

Same contracts as _kernels_numpy: deterministic results with first-index
(lexicographic) argmax tie-breaking.
"""

from libc.math cimport fabs, sqrt, pow, INFINITY

import numpy as np


cdef inline double _row_dist(const double[:, ::1] A, Py_ssize_t i, Py_ssize_t j,
                             double p, Py_ssize_t d) noexcept nogil:
    cdef double acc = 0.0
    cdef double t
    cdef Py_ssize_t k
    if p == 2.0:
        for k in range(d):
            t = A[i, k] - A[j, k]
            acc += t * t
        return sqrt(acc)
    if p == 1.0:
        for k in range(d):
            acc += fabs(A[i, k] - A[j, k])
        return acc
    if p == INFINITY:
        for k in range(d):
            t = fabs(A[i, k] - A[j, k])
            if t > acc:
                acc = t
        return acc
    for k in range(d):
        acc += pow(fabs(A[i, k] - A[j, k]), p)
    return pow(acc, 1.0 / p)


cdef inline double _cross_dist(const double[:, ::1] A, Py_ssize_t i,
                               const double[:, ::1] B, Py_ssize_t j,
                               double p, Py_ssize_t d) noexcept nogil:
    cdef double acc = 0.0
    cdef double t
    cdef Py_ssize_t k
    if p == 2.0:
        for k in range(d):
            t = A[i, k] - B[j, k]
            acc += t * t
        return sqrt(acc)
    if p == 1.0:
        for k in range(d):
            acc += fabs(A[i, k] - B[j, k])
        return acc
    if p == INFINITY:
        for k in range(d):
            t = fabs(A[i, k] - B[j, k])
            if t > acc:
                acc = t
        return acc
    for k in range(d):
        acc += pow(fabs(A[i, k] - B[j, k]), p)
    return pow(acc, 1.0 / p)


def max_pair_defect(X, FX, double p_in, double p_out):
    """max over pairs i < j of | ||FX_i - FX_j|| - ||X_i - X_j|| |."""
    cdef double[:, ::1] Xv = np.ascontiguousarray(X, dtype=np.float64)
    cdef double[:, ::1] Fv = np.ascontiguousarray(FX, dtype=np.float64)
    cdef Py_ssize_t n = Xv.shape[0]
    cdef Py_ssize_t dx = Xv.shape[1]
    cdef Py_ssize_t dy = Fv.shape[1]
    if n < 2:
        raise ValueError("need at least two samples")
    if Fv.shape[0] != n:
        raise ValueError("X and FX must have the same number of rows")
    cdef double best = -1.0
    cdef double val
    cdef Py_ssize_t bi = 0, bj = 0, i, j
    with nogil:
        for i in range(n - 1):
            for j in range(i + 1, n):
                val = fabs(_row_dist(Fv, i, j, p_out, dy) - _row_dist(Xv, i, j, p_in, dx))
                if val > best:
                    best = val
                    bi = i
                    bj = j
    return best, int(bi), int(bj)


def max_min_distance(Y, FX, double p):
    """max over rows y of Y of (min over rows v of FX of ||v - y||)."""
    cdef double[:, ::1] Yv = np.ascontiguousarray(Y, dtype=np.float64)
    cdef double[:, ::1] Fv = np.ascontiguousarray(FX, dtype=np.float64)
    cdef Py_ssize_t m = Yv.shape[0]
    cdef Py_ssize_t n = Fv.shape[0]
    cdef Py_ssize_t d = Yv.shape[1]
    if m == 0 or n == 0:
        raise ValueError("need nonempty sample sets")
    if Fv.shape[1] != d:
        raise ValueError("dimension mismatch")
    cdef double best = -1.0
    cdef double inner, val
    cdef Py_ssize_t biy = 0, bix = 0, i, j, arg
    with nogil:
        for i in range(m):
            inner = INFINITY
            arg = 0
            for j in range(n):
                val = _cross_dist(Yv, i, Fv, j, p, d)
                if val < inner:
                    inner = val
                    arg = j
            if inner > best:
                best = inner
                biy = i
                bix = arg
    return best, int(biy), int(bix)
