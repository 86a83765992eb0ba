# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled de Casteljau kernel.

Evaluates a polynomial given by its Bernstein coefficients at a batch of
points via repeated convex combinations b[j] <- (1-x)*b[j] + x*b[j+1].
Cost is O(n^2) per point, which is the hot loop of every sup-norm search,
hence the C version.  bernint._kernels_py holds the drop-in numpy fallback.
"""

import numpy as np


def decasteljau_batch(double[::1] coeffs, double[::1] xs):
    """Evaluate the Bernstein-form polynomial ``coeffs`` at every point of ``xs``.

    ``coeffs`` has length n+1 for degree n.  Returns a float64 array the
    same length as ``xs``.
    """
    cdef Py_ssize_t n = coeffs.shape[0] - 1
    cdef Py_ssize_t m = xs.shape[0]
    if n < 0:
        raise ValueError("need at least one coefficient")
    out = np.empty(m, dtype=np.float64)
    scratch = np.empty(n + 1, dtype=np.float64)
    cdef double[::1] out_v = out
    cdef double[::1] b = scratch
    cdef Py_ssize_t i, j, r
    cdef double x, omx
    with nogil:
        for i in range(m):
            x = xs[i]
            omx = 1.0 - x
            for j in range(n + 1):
                b[j] = coeffs[j]
            for r in range(n):
                for j in range(n - r):
                    b[j] = omx * b[j] + x * b[j + 1]
            out_v[i] = b[0]
    return out
