# cython: language_level=3
"""Compiled numerical kernels: theta-ray quadrature and unit-phase sums.

The panel/node layout, term-cutoff rule and per-panel accumulation order
match `pure.py`; only the loop fusion differs.
"""

import numpy as np

from libc.math cimport cos, exp, log, sin, sqrt

BACKEND_NAME = "compiled"


def ray_integrals(double[::1] A, double[::1] r, double sigma, double t,
                  double eta, double omega, double[::1] plo, double[::1] phi,
                  double[::1] gx, double[::1] gw, double taildec):
    """Panel Gauss-Legendre quadrature of the two theta-ray integrals.

    See the pure backend for the full contract; A must be sorted ascending.
    Returns (Cp, Cm, absacc).
    """
    cdef Py_ssize_t n_panel = plo.shape[0]
    cdef Py_ssize_t n_gauss = gx.shape[0]
    cdef Py_ssize_t n_terms = A.shape[0]
    cdef Py_ssize_t ip, ig, j
    cdef double cw = cos(omega)
    cdef double sw = sin(omega)
    cdef double cp_re = 0.0, cp_im = 0.0
    cdef double cm_re = 0.0, cm_im = 0.0
    cdef double absacc = 0.0
    cdef double mid, half, rho, w, lim, dec, amp, ph
    cdef double psi_re, psi_im, lr, mag_p, mag_m, oc, os
    cdef double fp_re, fp_im, fm_re, fm_im

    for ip in range(n_panel):
        mid = 0.5 * (plo[ip] + phi[ip])
        half = 0.5 * (phi[ip] - plo[ip])
        for ig in range(n_gauss):
            rho = mid + half * gx[ig]
            w = half * gw[ig]
            # psi on the rotated ray; terms decay as exp(-A rho cos w)
            lim = A[0] * rho * cw + taildec
            psi_re = 0.0
            psi_im = 0.0
            for j in range(n_terms):
                dec = A[j] * rho * cw
                if dec > lim:
                    break
                amp = r[j] * exp(-dec)
                ph = A[j] * rho * sw
                psi_re += amp * cos(ph)
                psi_im -= eta * amp * sin(ph)
            lr = log(rho)
            mag_p = exp((sigma - 1.0) * lr)
            mag_m = exp(-sigma * lr)
            oc = cos(t * lr)
            os = sin(t * lr)
            # f_p = rho^(sigma-1) e^{i t lr} psi ; f_m = rho^(-sigma) conj(e^{i t lr} psi)
            fp_re = mag_p * (oc * psi_re - os * psi_im)
            fp_im = mag_p * (oc * psi_im + os * psi_re)
            fm_re = mag_m * (oc * psi_re - os * psi_im)
            fm_im = -mag_m * (oc * psi_im + os * psi_re)
            cp_re += w * fp_re
            cp_im += w * fp_im
            cm_re += w * fm_re
            cm_im += w * fm_im
            absacc += w * (sqrt(fp_re * fp_re + fp_im * fp_im)
                           + sqrt(fm_re * fm_re + fm_im * fm_im))
    return complex(cp_re, cp_im), complex(cm_re, cm_im), absacc


def ray_profile(double[::1] A, double[::1] r, double eta, double omega,
                double[::1] plo, double[::1] phi,
                double[::1] gx, double[::1] gw, double taildec):
    """Per-node s-independent ray data (rho, log rho, w * psi).

    See the pure backend for the full contract; same node layout and term
    cutoff as ray_integrals.
    """
    cdef Py_ssize_t n_panel = plo.shape[0]
    cdef Py_ssize_t n_gauss = gx.shape[0]
    cdef Py_ssize_t n_terms = A.shape[0]
    cdef Py_ssize_t ip, ig, j, k
    cdef double cw = cos(omega)
    cdef double sw = sin(omega)
    cdef double mid, half, rho, w, lim, dec, amp, ph
    cdef double psi_re, psi_im

    rho_arr = np.empty(n_panel * n_gauss, dtype=np.float64)
    lr_arr = np.empty(n_panel * n_gauss, dtype=np.float64)
    wpsi_arr = np.empty(n_panel * n_gauss, dtype=np.complex128)
    cdef double[::1] rho_v = rho_arr
    cdef double[::1] lr_v = lr_arr
    cdef double complex[::1] wpsi_v = wpsi_arr

    k = 0
    for ip in range(n_panel):
        mid = 0.5 * (plo[ip] + phi[ip])
        half = 0.5 * (phi[ip] - plo[ip])
        for ig in range(n_gauss):
            rho = mid + half * gx[ig]
            w = half * gw[ig]
            lim = A[0] * rho * cw + taildec
            psi_re = 0.0
            psi_im = 0.0
            for j in range(n_terms):
                dec = A[j] * rho * cw
                if dec > lim:
                    break
                amp = r[j] * exp(-dec)
                ph = A[j] * rho * sw
                psi_re += amp * cos(ph)
                psi_im -= eta * amp * sin(ph)
            rho_v[k] = rho
            lr_v[k] = log(rho)
            wpsi_v[k] = (w * psi_re) + 1j * (w * psi_im)
            k += 1
    return rho_arr, lr_arr, wpsi_arr


def phase_sum(double[::1] frac):
    """Sum of exp(2 pi i theta) over phases given mod 1 (as in pure.py)."""
    cdef Py_ssize_t n = frac.shape[0]
    cdef Py_ssize_t i
    cdef double two_pi = 6.283185307179586476925287
    cdef double acc_re = 0.0, acc_im = 0.0, a
    for i in range(n):
        a = two_pi * frac[i]
        acc_re += cos(a)
        acc_im += sin(a)
    return complex(acc_re, acc_im), n
