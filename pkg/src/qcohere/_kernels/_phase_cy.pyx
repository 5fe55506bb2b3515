# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled phase-evaluation kernels.

Same contract as ``_phase_np``; see that module for the reference
semantics.  The loops below use the Hermitian symmetry of the input so
each sample costs N(N-1)/2 cos/sin pairs.
"""

from libc.math cimport cos, sin

import numpy as np

BACKEND_NAME = "cython"


def phase_batch(matrix, phases):
    """Evaluate v^dag M v for a batch of phase vectors (see _phase_np)."""
    matrix = np.ascontiguousarray(matrix, dtype=complex)
    phases = np.ascontiguousarray(np.atleast_2d(np.asarray(phases, dtype=float)))
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("matrix must be square")
    if phases.shape[1] != matrix.shape[0]:
        raise ValueError("phase vectors and matrix have different dimensions")
    out = np.empty(phases.shape[0], dtype=float)
    _phase_batch(matrix, phases, out)
    return out


cdef void _phase_batch(double complex[:, :] matrix,
                       double[:, :] phases,
                       double[:] out) noexcept nogil:
    cdef Py_ssize_t s = phases.shape[0]
    cdef Py_ssize_t n = phases.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double acc, diff
    cdef double complex m
    for i in range(s):
        acc = 0.0
        for j in range(n):
            acc = acc + matrix[j, j].real
            for k in range(j + 1, n):
                diff = phases[i, k] - phases[i, j]
                m = matrix[j, k]
                acc = acc + 2.0 * (m.real * cos(diff) - m.imag * sin(diff))
        out[i] = acc


def single_phase_batch(gammas, phis):
    """Evaluate sum_tau Gamma(tau) exp(-i tau phi) (see _phase_np)."""
    gammas = np.ascontiguousarray(gammas, dtype=complex)
    phis = np.ascontiguousarray(np.atleast_1d(np.asarray(phis, dtype=float)))
    if gammas.ndim != 1 or gammas.shape[0] % 2 != 1:
        raise ValueError("gammas must be a 1-d array of odd length")
    out = np.empty(phis.shape[0], dtype=float)
    _single_phase_batch(gammas, phis, out)
    return out


cdef void _single_phase_batch(double complex[:] gammas,
                              double[:] phis,
                              double[:] out) noexcept nogil:
    cdef Py_ssize_t half = (gammas.shape[0] - 1) // 2
    cdef Py_ssize_t s = phis.shape[0]
    cdef Py_ssize_t i, t
    cdef double acc, phi
    cdef double complex g
    for i in range(s):
        phi = phis[i]
        acc = gammas[half].real
        for t in range(1, half + 1):
            g = gammas[half + t]
            # Gamma(t) e^{-i t phi} + Gamma(-t) e^{i t phi} = 2 Re(...)
            acc = acc + 2.0 * (g.real * cos(t * phi) + g.imag * sin(t * phi))
        out[i] = acc
