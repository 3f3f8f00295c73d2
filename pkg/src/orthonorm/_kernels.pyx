# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops for three-term recurrences and the Stieltjes procedure.

Recurrences are written as y_{k+1} = (A_k x + B_k) y_k - C_k y_{k-1},
y_{-1} = 0, y_0 = const.
"""
import numpy as np
from libc.math cimport sqrt, isfinite


def recur(const double[::1] A, const double[::1] B, const double[::1] C,
          double y0, const double[::1] x, Py_ssize_t n):
    cdef Py_ssize_t m = x.shape[0], j, k
    out = np.empty(m)
    cdef double[::1] o = out
    cdef double xj, ym, yc, yn
    with nogil:
        for j in range(m):
            xj = x[j]
            ym = 0.0
            yc = y0
            for k in range(n):
                yn = (A[k] * xj + B[k]) * yc - C[k] * ym
                ym = yc
                yc = yn
            o[j] = yc
    return out


def recur_all(const double[::1] A, const double[::1] B, const double[::1] C,
              double y0, const double[::1] x, Py_ssize_t n):
    cdef Py_ssize_t m = x.shape[0], j, k
    out = np.empty((n + 1, m))
    cdef double[:, ::1] o = out
    cdef double xj, ym, yc, yn
    with nogil:
        for j in range(m):
            xj = x[j]
            ym = 0.0
            yc = y0
            o[0, j] = yc
            for k in range(n):
                yn = (A[k] * xj + B[k]) * yc - C[k] * ym
                ym = yc
                yc = yn
                o[k + 1, j] = yc
    return out


def christoffel(const double[::1] A, const double[::1] B, const double[::1] C,
                double y0, const double[::1] x, Py_ssize_t n):
    """Sum of y_k(x)^2 for k < n."""
    cdef Py_ssize_t m = x.shape[0], j, k
    out = np.empty(m)
    cdef double[::1] o = out
    cdef double xj, ym, yc, yn, s
    with nogil:
        for j in range(m):
            xj = x[j]
            ym = 0.0
            yc = y0
            s = yc * yc
            for k in range(n - 1):
                yn = (A[k] * xj + B[k]) * yc - C[k] * ym
                ym = yc
                yc = yn
                s += yc * yc
            o[j] = s
    return out


def stieltjes(const double[::1] x, const double[::1] w, Py_ssize_t N):
    """Orthonormal Stieltjes procedure on the discrete measure sum w_j delta_{x_j}.

    Returns (a, b, ref, status); status is -1 on success, otherwise the
    index k at which b_k came out nonpositive or non-finite.  ref[k] holds
    ||x p_k|| for the significance check done by the caller.
    """
    cdef Py_ssize_t M = x.shape[0], j, k
    a_arr = np.zeros(N)
    b_arr = np.zeros(N)
    r_arr = np.zeros(N)
    pc_arr = np.empty(M)
    pm_arr = np.zeros(M)
    cdef double[::1] a = a_arr, b = b_arr, r = r_arr, pc = pc_arr, pm = pm_arr
    cdef double mass = 0.0, p0, s, s2, q, t, xp, ak, bprev = 0.0, bk
    cdef Py_ssize_t status = -1
    with nogil:
        for j in range(M):
            mass += w[j]
        p0 = 1.0 / sqrt(mass)
        for j in range(M):
            pc[j] = p0
        for k in range(N):
            s = 0.0
            s2 = 0.0
            for j in range(M):
                xp = x[j] * pc[j]
                s += w[j] * xp * pc[j]
                s2 += w[j] * xp * xp
            ak = s
            a[k] = ak
            r[k] = sqrt(s2)
            s2 = 0.0
            for j in range(M):
                q = (x[j] - ak) * pc[j] - bprev * pm[j]
                pm[j] = q
                s2 += w[j] * q * q
            bk = sqrt(s2)
            if not (bk > 0.0 and isfinite(bk)):
                status = k
                break
            b[k] = bk
            for j in range(M):
                t = pm[j] / bk
                pm[j] = pc[j]
                pc[j] = t
            bprev = bk
    return a_arr, b_arr, r_arr, status, mass
