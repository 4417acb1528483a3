# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Numerov sweep kernel."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def numerov_sweep(object w_in, double h, double y0, double y1):
    """Integrate y'' = w(x) y left to right on a uniform mesh."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.ascontiguousarray(w_in, dtype=np.float64)
    cdef Py_ssize_t n = w.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] y = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] f = np.empty(n, dtype=np.float64)
    cdef double c = h * h / 12.0
    cdef Py_ssize_t i
    for i in range(n):
        f[i] = 1.0 - c * w[i]
    y[0] = y0
    if n > 1:
        y[1] = y1
    for i in range(1, n - 1):
        y[i + 1] = ((12.0 - 10.0 * f[i]) * y[i] - f[i - 1] * y[i - 1]) / f[i + 1]
    return y
