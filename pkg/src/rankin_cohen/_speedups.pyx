# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: the Jacobi recurrence and the Kummer series.

Mirrors ``_fallback.py`` function for function.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def jacobi_table(int l, double a, double b, x):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t m = xv.shape[0], i
    out = np.empty((l + 1, m), dtype=np.float64)
    cdef double[:, ::1] P = out
    cdef int n
    cdef double ab = a + b, c, a1, a3, cc
    for i in range(m):
        P[0, i] = 1.0
    if l == 0:
        return out
    for i in range(m):
        P[1, i] = (a + 1.0) + (a + b + 2.0) * (xv[i] - 1.0) / 2.0
    for n in range(2, l + 1):
        c = 2.0 * n + ab
        a1 = 2.0 * n * (n + ab) * (c - 2.0)
        a3 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * c
        cc = a * a - b * b
        for i in range(m):
            P[n, i] = ((c - 1.0) * (c * (c - 2.0) * xv[i] + cc) * P[n - 1, i]
                       - a3 * P[n - 2, i]) / a1
    return out


cdef inline double _abs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


def kummer_series(double complex a, double complex b, x,
                  double rtol=1e-16, int max_terms=5000):
    cdef const double complex[::1] xv = np.ascontiguousarray(x, dtype=np.complex128)
    cdef Py_ssize_t m = xv.shape[0], i
    values = np.empty(m, dtype=np.complex128)
    flags = np.zeros(m, dtype=np.uint8)
    cdef double complex[::1] out = values
    cdef unsigned char[::1] ok = flags
    cdef double complex term, total, xi, num, den
    cdef double rtol2 = rtol * rtol, d2
    cdef int n, small
    with nogil:
        for i in range(m):
            xi = xv[i]
            term = 1.0
            total = 1.0
            small = 0
            for n in range(max_terms):
                num = (a + n) * xi
                den = (b + n) * (n + 1.0)
                # num / den through the conjugate: one real division instead of a complex one
                d2 = _abs2(den)
                term = term * (num * den.conjugate()) / d2
                total = total + term
                if _abs2(term) <= rtol2 * _abs2(total):
                    small += 1
                    if small >= 3:
                        ok[i] = 1
                        break
                else:
                    small = 0
            out[i] = total
    return values, flags.view(np.bool_)
