"""Pure NumPy fallback for the hot numerical kernels.

Mirrors the compiled extension in `_core.pyx` exactly: same panel/node
layout, same term-cutoff rule, same summation order per panel, so the two
backends agree to rounding noise.
"""

import numpy as np

BACKEND_NAME = "pure"


def ray_integrals(A, r, sigma, t, eta, omega, plo, phi, gx, gw, taildec):
    """Panel Gauss-Legendre quadrature of the two theta-ray integrals.

    Computes
        Cp = int_1^inf rho^(sigma-1+it) * psi_ray(rho) drho
        Cm = int_1^inf rho^(-sigma-it) * conj(psi_ray(rho)) drho
    where psi_ray(rho) = sum_j r[j] exp(-A[j] rho cos w) exp(-i eta A[j] rho sin w)
    over the panels [plo[p], phi[p]] with Gauss-Legendre nodes gx / weights gw,
    dropping terms once A[j] rho cos w exceeds A[0] rho cos w + taildec.
    Returns (Cp, Cm, absacc) with absacc the integral of |f+| + |f-|.
    """
    A = np.asarray(A, dtype=np.float64)
    r = np.asarray(r, dtype=np.float64)
    cw = np.cos(omega)
    sw = np.sin(omega)
    cp = 0.0 + 0.0j
    cm = 0.0 + 0.0j
    absacc = 0.0
    for lo, hi in zip(plo, phi):
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        rho = mid + half * gx            # (G,)
        w = half * gw
        # term cutoff per node: A[j] <= A[0] + taildec / (rho cw)
        decay = np.outer(rho * cw, A)    # (G, nA)
        keep = decay <= decay[:, :1] + taildec
        amp = np.where(keep, r * np.exp(np.where(keep, -decay, 0.0)), 0.0)
        ph = np.outer(rho * sw, A)
        psi = np.sum(amp * np.exp(-1j * eta * ph), axis=1)   # (G,)
        lr = np.log(rho)
        osc = np.exp(1j * t * lr)
        f_p = np.exp((sigma - 1.0) * lr) * osc * psi
        f_m = np.exp(-sigma * lr) * np.conj(osc) * np.conj(psi)
        cp += np.sum(w * f_p)
        cm += np.sum(w * f_m)
        absacc += float(np.sum(w * (np.abs(f_p) + np.abs(f_m))))
    return cp, cm, absacc


def ray_profile(A, r, eta, omega, plo, phi, gx, gw, taildec):
    """Per-node quadrature data of the theta ray, independent of s.

    Returns (rho, lr, wpsi) arrays over all panel nodes: the node radii,
    their logarithms, and w_j * psi_ray(rho_j) with w_j the scaled
    Gauss-Legendre weight.  Both ray integrals then reduce to weighted
    power sums:

        Cp(s) = sum_j wpsi[j] rho[j]^(sigma-1) exp(i t lr[j])
        Cm(s) = conj( sum_j wpsi[j] rho[j]^(-sigma) exp(i t lr[j]) )

    so a scan over many t at fixed sigma pays the theta-term loop once.
    Same node layout and term cutoff as ray_integrals.
    """
    A = np.asarray(A, dtype=np.float64)
    r = np.asarray(r, dtype=np.float64)
    plo = np.asarray(plo, dtype=np.float64)
    phi = np.asarray(phi, dtype=np.float64)
    cw = np.cos(omega)
    sw = np.sin(omega)
    mid = 0.5 * (plo + phi)
    half = 0.5 * (phi - plo)
    rho = (mid[:, None] + half[:, None] * gx).ravel()     # (P*G,)
    w = (half[:, None] * gw).ravel()
    decay = np.outer(rho * cw, A)                         # (N, nA)
    keep = decay <= decay[:, :1] + taildec
    amp = np.where(keep, r * np.exp(np.where(keep, -decay, 0.0)), 0.0)
    ph = np.outer(rho * sw, A)
    psi = np.sum(amp * np.exp(-1j * eta * ph), axis=1)
    return rho, np.log(rho), w * psi


def phase_sum(frac):
    """Sum of exp(2 pi i theta) over phases given mod 1, with |.| tally.

    Returns (total, count).  Phases arrive already reduced to [0, 1); the
    reduction itself is done upstream in exact integer/split arithmetic.
    """
    frac = np.asarray(frac, dtype=np.float64)
    z = np.exp(2j * np.pi * frac)
    return complex(z.sum()), int(frac.size)
