# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled statevector kernels: energy table fill, diagonal cost phase,
transverse-field mixer sweep, expectation.  Mirrors numpy_backend.

Complex amplitudes are manipulated through a float64 view with explicit
real/imaginary arithmetic; C99 complex semantics (inf/nan fixups in
__muldc3) would roughly quadruple the cost of the inner loops.
"""

import numpy as np


def energy_table(int n_qubits, double offset,
                 int[::1] field_qubits, double[::1] field_values,
                 int[::1] coup_a, int[::1] coup_b, double[::1] coup_values):
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n_qubits
    out = np.full(size, offset, dtype=np.float64)
    cdef double[::1] energies = out
    cdef Py_ssize_t idx
    cdef int k, q, a, b
    cdef double value
    for k in range(field_qubits.shape[0]):
        q = field_qubits[k]
        value = field_values[k]
        for idx in range(size):
            energies[idx] += value * (1.0 - 2.0 * ((idx >> q) & 1))
    for k in range(coup_a.shape[0]):
        a = coup_a[k]
        b = coup_b[k]
        value = coup_values[k]
        for idx in range(size):
            energies[idx] += value * (1.0 - 2.0 * (((idx >> a) ^ (idx >> b)) & 1))
    return out


def apply_phase_levels(amplitudes, double[::1] phase_re, double[::1] phase_im,
                       long[::1] level_index):
    cdef double[::1] a = amplitudes.view(np.float64)
    cdef Py_ssize_t i, n = level_index.shape[0]
    cdef Py_ssize_t k
    cdef double ar, ai, pr, pi
    for i in range(n):
        k = level_index[i]
        pr = phase_re[k]
        pi = phase_im[k]
        ar = a[2 * i]
        ai = a[2 * i + 1]
        a[2 * i] = ar * pr - ai * pi
        a[2 * i + 1] = ar * pi + ai * pr


def apply_mixer(amplitudes, int n_qubits, double c, double s):
    # per-qubit rotation [[c, -i s], [-i s, c]] across amplitude pairs
    cdef double[::1] a = amplitudes.view(np.float64)
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n_qubits
    cdef Py_ssize_t stride, base, i, j
    cdef int q
    cdef double lr, li, hr, hi
    for q in range(n_qubits):
        stride = (<Py_ssize_t> 1) << q
        base = 0
        while base < size:
            for i in range(base, base + stride):
                j = i + stride
                lr = a[2 * i]
                li = a[2 * i + 1]
                hr = a[2 * j]
                hi = a[2 * j + 1]
                a[2 * i] = c * lr + s * hi
                a[2 * i + 1] = c * li - s * hr
                a[2 * j] = c * hr + s * li
                a[2 * j + 1] = c * hi - s * lr
            base += 2 * stride


def expectation(amplitudes, double[::1] energies):
    cdef double[::1] a = amplitudes.view(np.float64)
    cdef double total = 0.0
    cdef Py_ssize_t i
    for i in range(energies.shape[0]):
        total += (a[2 * i] * a[2 * i] + a[2 * i + 1] * a[2 * i + 1]) * energies[i]
    return total


def norm_squared(amplitudes):
    cdef double[::1] a = amplitudes.view(np.float64)
    cdef double total = 0.0
    cdef Py_ssize_t i
    for i in range(a.shape[0]):
        total += a[i] * a[i]
    return total
