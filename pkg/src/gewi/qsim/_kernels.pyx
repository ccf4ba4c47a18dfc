# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled amplitude kernels; same contract as ``_kernels_py``."""

from libc.math cimport sqrt

BACKEND = "cython"

cdef double _INV_SQRT2 = 1.0 / sqrt(2.0)


cpdef list kron(list a, list b):
    cdef Py_ssize_t i, j, na = len(a), nb = len(b)
    cdef double complex x
    cdef list out = [None] * (na * nb)
    for i in range(na):
        x = a[i]
        for j in range(nb):
            out[i * nb + j] = x * <double complex>b[j]
    return out


cpdef list apply_x(list amps, int n, int k):
    cdef Py_ssize_t i, size = len(amps)
    cdef Py_ssize_t step = 1 << (n - 1 - k)
    cdef list out = list(amps)
    for i in range(size):
        if not (i & step):
            out[i] = amps[i | step]
            out[i | step] = amps[i]
    return out


cpdef list apply_z(list amps, int n, int k):
    cdef Py_ssize_t i, size = len(amps)
    cdef Py_ssize_t step = 1 << (n - 1 - k)
    cdef list out = list(amps)
    for i in range(size):
        if i & step:
            out[i] = -<double complex>amps[i]
    return out


cpdef list apply_h(list amps, int n, int k):
    cdef Py_ssize_t i, size = len(amps)
    cdef Py_ssize_t step = 1 << (n - 1 - k)
    cdef double complex a0, a1
    cdef list out = list(amps)
    for i in range(size):
        if not (i & step):
            a0 = amps[i]
            a1 = amps[i | step]
            out[i] = (a0 + a1) * _INV_SQRT2
            out[i | step] = (a0 - a1) * _INV_SQRT2
    return out


cpdef list apply_cnot(list amps, int n, int c, int t):
    cdef Py_ssize_t i, size = len(amps)
    cdef Py_ssize_t cbit = 1 << (n - 1 - c)
    cdef Py_ssize_t tbit = 1 << (n - 1 - t)
    cdef list out = list(amps)
    for i in range(size):
        if (i & cbit) and not (i & tbit):
            out[i] = amps[i | tbit]
            out[i | tbit] = amps[i]
    return out


cpdef double prob_one(list amps, int n, int k):
    cdef Py_ssize_t i, size = len(amps)
    cdef Py_ssize_t step = 1 << (n - 1 - k)
    cdef double complex a
    cdef double total = 0.0
    for i in range(size):
        if i & step:
            a = amps[i]
            total += a.real * a.real + a.imag * a.imag
    return total


cpdef list collapse(list amps, int n, int k, int outcome, double prob):
    cdef Py_ssize_t i, j = 0, size = len(amps)
    cdef Py_ssize_t step = 1 << (n - 1 - k)
    cdef Py_ssize_t want = step if outcome else 0
    cdef double scale = 1.0 / sqrt(prob)
    cdef list out = [None] * (size // 2)
    for i in range(size):
        if (i & step) == want:
            out[j] = <double complex>amps[i] * scale
            j += 1
    return out
