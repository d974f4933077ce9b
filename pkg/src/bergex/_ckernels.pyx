# cython: language_level=3
"""Compiled coefficient kernels: convolution and cross-correlation.

Semantics match ``_pykernels`` exactly; see that module for the contract.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def conv_direct(a, b):
    """Cauchy convolution of two complex coefficient vectors."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] aa = np.ascontiguousarray(a, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] bb = np.ascontiguousarray(b, dtype=np.complex128)
    cdef Py_ssize_t na = aa.shape[0]
    cdef Py_ssize_t nb = bb.shape[0]
    if na == 0 or nb == 0:
        return np.zeros(0, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(na + nb - 1, dtype=np.complex128)
    cdef Py_ssize_t i, j
    cdef double complex ai
    for i in range(na):
        ai = aa[i]
        for j in range(nb):
            out[i + j] = out[i + j] + ai * bb[j]
    return out


def xcorr_direct(a, v):
    """Nonnegative-lag cross-correlation out[j] = sum_t a[t+j] * conj(v[t])."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] aa = np.ascontiguousarray(a, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] vv = np.ascontiguousarray(v, dtype=np.complex128)
    cdef Py_ssize_t na = aa.shape[0]
    cdef Py_ssize_t nv = vv.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(na, dtype=np.complex128)
    cdef Py_ssize_t j, t, m
    cdef double complex acc
    for j in range(na):
        m = na - j
        if nv < m:
            m = nv
        acc = 0
        for t in range(m):
            acc = acc + aa[j + t] * vv[t].conjugate()
        out[j] = acc
    return out
