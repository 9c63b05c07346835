# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Pauli expectations, stabilizer-purity sums and
matrix-free Pauli-sum application.  Mirrors the API of ``_fallback``."""

import numpy as np

cimport cython
from libc.math cimport log
from libc.stdlib cimport free, malloc

IMPL = "cython"

cdef extern from *:
    """
    static inline int popcount64(unsigned long long x) {
        return __builtin_popcountll(x);
    }
    """
    int popcount64(unsigned long long x) nogil


def pauli_phase(a, b):
    """Phase i**popcount(a & b) of the canonical Hermitian string."""
    cdef int w = popcount64(<unsigned long long>(a & b)) & 3
    if w == 0:
        return 1.0 + 0.0j
    if w == 1:
        return 1.0j
    if w == 2:
        return -1.0 + 0.0j
    return -1.0j


def pauli_expectation_raw(const double complex[::1] psi, a, b):
    """<psi| X^a Z^b |psi> without the i**popcount(a & b) prefactor."""
    cdef unsigned long long ua = a, ub = b, i
    cdef unsigned long long d = psi.shape[0]
    cdef double complex acc = 0
    cdef double sign
    with nogil:
        for i in range(d):
            sign = -1.0 if (popcount64(i & ub) & 1) else 1.0
            acc = acc + sign * psi[i ^ ua].conjugate() * psi[i]
    return complex(acc)


cdef void _fwht(double complex *f, unsigned long long d) nogil:
    cdef unsigned long long h = 1, i, j
    cdef double complex x, y
    while h < d:
        i = 0
        while i < d:
            for j in range(i, i + h):
                x = f[j]
                y = f[j + h]
                f[j] = x + y
                f[j + h] = x - y
            i += 2 * h
        h *= 2


def pauli_moment_sum(const double complex[::1] psi, int alpha):
    """Sum over all 4**n Pauli strings of |<psi|P|psi>|**(2*alpha).

    For each x-mask the full z-mask row is obtained with one
    Walsh-Hadamard transform of f_i = conj(psi[i ^ a]) psi[i].
    """
    cdef unsigned long long d = psi.shape[0]
    cdef unsigned long long a, i
    cdef int k
    cdef double total = 0.0, p2, term
    cdef double complex *f = <double complex *> malloc(d * sizeof(double complex))
    if f == NULL:
        raise MemoryError
    try:
        with nogil:
            for a in range(d):
                for i in range(d):
                    f[i] = psi[i ^ a].conjugate() * psi[i]
                _fwht(f, d)
                for i in range(d):
                    p2 = f[i].real * f[i].real + f[i].imag * f[i].imag
                    term = p2
                    for k in range(alpha - 1):
                        term *= p2
                    total += term
    finally:
        free(f)
    return total


def pauli_xlogx_sum(const double complex[::1] psi):
    """Sum of <P>^2 * ln(<P>^2) over all Pauli strings (0 ln 0 := 0)."""
    cdef unsigned long long d = psi.shape[0]
    cdef unsigned long long a, i
    cdef double total = 0.0, p2
    cdef double complex *f = <double complex *> malloc(d * sizeof(double complex))
    if f == NULL:
        raise MemoryError
    try:
        with nogil:
            for a in range(d):
                for i in range(d):
                    f[i] = psi[i ^ a].conjugate() * psi[i]
                _fwht(f, d)
                for i in range(d):
                    p2 = f[i].real * f[i].real + f[i].imag * f[i].imag
                    if p2 > 1e-300:
                        total += p2 * log(p2)
    finally:
        free(f)
    return total


def apply_pauli_sum(const double[::1] coeffs,
                    const unsigned long long[::1] xs,
                    const unsigned long long[::1] zs,
                    const double complex[::1] phases,
                    const double complex[::1] psi,
                    double complex[::1] out):
    """out += sum_k coeffs[k] * phases[k] * X^xs[k] Z^zs[k] |psi>."""
    cdef unsigned long long d = psi.shape[0]
    cdef Py_ssize_t k, nterms = coeffs.shape[0]
    cdef unsigned long long i, a, b
    cdef double complex cp
    with nogil:
        for k in range(nterms):
            a = xs[k]
            b = zs[k]
            cp = coeffs[k] * phases[k]
            for i in range(d):
                if popcount64(i & b) & 1:
                    out[i ^ a] = out[i ^ a] - cp * psi[i]
                else:
                    out[i ^ a] = out[i ^ a] + cp * psi[i]
    return np.asarray(out)
