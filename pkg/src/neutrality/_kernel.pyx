# cython: language_level=3
"""Compiled arithmetic kernel: coefficient convolution mod Phi_N.

Mirrors _kernel_py exactly.  Coefficients stay Python ints so arbitrary
precision is preserved; the win comes from C-level loop and index handling.
"""

BACKEND = "cython"


cpdef list conv_reduce(a, b, tuple red, Py_ssize_t deg):
    cdef Py_ssize_t i, j, k
    cdef list out = [0] * (2 * deg - 1)
    cdef object ai, bj, c, rj
    for i in range(deg):
        ai = a[i]
        if ai:
            for j in range(deg):
                bj = b[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
    cdef list res = out[:deg]
    cdef tuple row
    for k in range(deg, 2 * deg - 1):
        c = out[k]
        if c:
            row = red[k - deg]
            for j in range(deg):
                rj = row[j]
                if rj:
                    res[j] = res[j] + c * rj
    return res


cpdef list scaled_accumulate(list acc, c, row):
    cdef Py_ssize_t j
    cdef object rj
    for j in range(len(row)):
        rj = row[j]
        if rj:
            acc[j] = acc[j] + c * rj
    return acc
