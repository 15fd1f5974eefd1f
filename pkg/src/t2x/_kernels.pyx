# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernel: fill one row block of the weighted pair-amplitude matrix.

Each entry combines the pump spectral envelope, the exact phase-matching
response exp(-i d/2) sinc(d/2) written in the cancellation-free form
sin(d)/d + i (cos(d) - 1)/d, and the per-column factors (quadrature weights,
test-arm chirp, detection-time shift).  Rows are restricted to the pump
envelope's support strip: outside +-pump_halfwidth lattice steps around the
energy-conservation diagonal the envelope underflows and contributes nothing.
"""

import numpy as np

from libc.math cimport sin, cos, fabs


def build_g(double[::1] kz1, double[::1] kz2, double[::1] kp_tab,
            double[::1] pump_tab, Py_ssize_t row_offset, double length,
            double complex[::1] c2, Py_ssize_t center_index,
            Py_ssize_t pump_halfwidth):
    cdef Py_ssize_t nb = kz1.shape[0]
    cdef Py_ssize_t n2 = kz2.shape[0]
    out_arr = np.zeros((nb, n2), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, gi, jlo, jhi
    cdef double a, d, d2, re, im, p
    for i in range(nb):
        gi = row_offset + i
        a = kz1[i]
        if pump_halfwidth > 0:
            jlo = center_index - gi - pump_halfwidth
            jhi = center_index - gi + pump_halfwidth
            if jlo < 0:
                jlo = 0
            if jhi > n2 - 1:
                jhi = n2 - 1
        else:
            jlo = 0
            jhi = n2 - 1
        for j in range(jlo, jhi + 1):
            d = (a + kz2[j] - kp_tab[gi + j]) * length
            if fabs(d) < 2.0e-4:
                # |d/2| below the sinc series threshold
                d2 = d * d
                re = 1.0 - d2 / 6.0 + d2 * d2 / 120.0
                im = -0.5 * d + d * d2 / 24.0
            else:
                re = sin(d) / d
                im = (cos(d) - 1.0) / d
            p = pump_tab[gi + j]
            out[i, j] = (p * re + 1j * (p * im)) * c2[j]
    return out_arr
