# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for stacked model evaluation.

Must stay semantically identical to ``treesweep._kernel_ref.stack_eval``;
the test suite asserts elementwise agreement on random stacks.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def stack_eval(double[:, ::1] S, double[::1] hflat, Py_ssize_t[::1] hoff,
               Py_ssize_t[::1] poff, double[::1] g, double[::1] anchor,
               double[::1] sigma, double[::1] consts, double[::1] y,
               int order):
    cdef Py_ssize_t K = S.shape[0]
    cdef Py_ssize_t n = S.shape[1]
    cdef Py_ssize_t m_count = poff.shape[0] - 1
    cdef Py_ssize_t m, lo, hi, k, r, c, i, j, hbase
    cdef double value = 0.0
    cdef double acc, nd, sg, coef

    p_arr = np.empty(K, dtype=np.float64)
    gp_arr = np.empty(K, dtype=np.float64) if order >= 1 else None
    grad_arr = np.zeros(n, dtype=np.float64) if order >= 1 else None
    hess_arr = np.zeros((n, n), dtype=np.float64) if order >= 2 else None
    a_arr = np.empty(0, dtype=np.float64)

    cdef double[::1] p = p_arr
    cdef double[::1] gp = gp_arr if order >= 1 else p_arr
    cdef double[::1] grad = grad_arr if order >= 1 else p_arr
    cdef double[:, ::1] hess
    cdef double[:, ::1] A
    cdef double d_r, srj

    # p = S @ y
    for r in range(K):
        acc = 0.0
        for j in range(n):
            acc += S[r, j] * y[j]
        p[r] = acc

    if order >= 2:
        hess = hess_arr

    for m in range(m_count):
        lo = poff[m]
        hi = poff[m + 1]
        k = hi - lo
        hbase = hoff[m]
        sg = sigma[m]

        # quadratic part: value, H p + g
        for r in range(k):
            acc = 0.0
            for c in range(k):
                acc += hflat[hbase + r * k + c] * p[lo + c]
            value += (0.5 * acc + g[lo + r]) * p[lo + r]
            if order >= 1:
                gp[lo + r] = acc + g[lo + r]
        value += consts[m]

        nd = 0.0
        for r in range(k):
            d_r = p[lo + r] - anchor[lo + r]
            nd += d_r * d_r
        nd = sqrt(nd)

        if sg > 0.0 and nd > 0.0:
            value += sg * nd * nd * nd
            if order >= 1:
                coef = 3.0 * sg * nd
                for r in range(k):
                    gp[lo + r] += coef * (p[lo + r] - anchor[lo + r])

        if order >= 2:
            a_arr = np.empty((k, k), dtype=np.float64)
            A = a_arr
            for r in range(k):
                for c in range(k):
                    A[r, c] = hflat[hbase + r * k + c]
            if sg > 0.0 and nd > 0.0:
                coef = 3.0 * sg / nd
                for r in range(k):
                    A[r, r] += 3.0 * sg * nd
                    d_r = p[lo + r] - anchor[lo + r]
                    for c in range(k):
                        A[r, c] += coef * d_r * (p[lo + c] - anchor[lo + c])
            # hess += S_m^T A S_m
            for r in range(k):
                for c in range(k):
                    coef = A[r, c]
                    if coef == 0.0:
                        continue
                    for i in range(n):
                        srj = coef * S[lo + r, i]
                        if srj == 0.0:
                            continue
                        for j in range(n):
                            hess[i, j] += srj * S[lo + c, j]

    if order >= 1:
        # grad = S^T gp
        for r in range(K):
            d_r = gp[r]
            if d_r == 0.0:
                continue
            for j in range(n):
                grad[j] += S[r, j] * d_r

    if order == 0:
        return value, None, None
    if order == 1:
        return value, grad_arr, None
    return value, grad_arr, hess_arr
