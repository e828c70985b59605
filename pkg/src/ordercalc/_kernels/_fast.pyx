# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: theta-grid modulus sweep and truncated series evaluation."""

import numpy as np

from libc.math cimport cos, sin


def square_mean_max(object x_in, object y_in, int grid_points):
    """max over theta in the uniform grid of cos(theta)*x + sin(theta)*y."""
    x_arr = np.ascontiguousarray(x_in, dtype=np.float64)
    y_arr = np.ascontiguousarray(y_in, dtype=np.float64)
    cdef double[::1] x = x_arr
    cdef double[::1] y = y_arr
    cdef Py_ssize_t m = x.shape[0]
    out_arr = np.full(m, -np.inf, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double step = 2.0 * np.pi / grid_points
    cdef double c, s, v
    for j in range(grid_points):
        c = cos(step * j)
        s = sin(step * j)
        for i in range(m):
            v = c * x[i] + s * y[i]
            if v > out[i]:
                out[i] = v
    return out_arr


def series_eval(object coeffs_in, object w_in):
    """sum_n coeffs[n, i] * w[i]**n per coordinate, by Horner's rule."""
    coeffs_arr = np.ascontiguousarray(coeffs_in, dtype=np.complex128)
    w_arr = np.ascontiguousarray(w_in, dtype=np.complex128)
    cdef double complex[:, ::1] coeffs = coeffs_arr
    cdef double complex[::1] w = w_arr
    cdef Py_ssize_t n_terms = coeffs.shape[0]
    cdef Py_ssize_t m = w.shape[0]
    out_arr = np.zeros(m, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t i, n
    cdef double complex acc
    for i in range(m):
        acc = 0
        for n in range(n_terms - 1, -1, -1):
            acc = acc * w[i] + coeffs[n, i]
        out[i] = acc
    return out_arr
