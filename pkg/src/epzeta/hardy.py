"""Real rotation of the zeta function on the critical line and its zeros.

W(t) = Re f(1/2 + it) with f(s) = gamma(s) zeta_Q(s) and the unimodular
rotation gamma(s) = e^{pi i (1/2 - s)/2} (sqrt(delta)/2pi)^s Gamma(s);
the reflection symmetry makes f real on the critical line, so critical-line
zeros of zeta_Q are sign changes of W.  The module provides W itself, a
Gaussian-weighted window integral whose deficit certifies an odd-order zero,
a sign-change scanner with bisection refinement, and gap statistics of the
refined ordinates against power-law window families.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .epstein import (
    TAILDEC,
    TWO_PI,
    _GL_W,
    _GL_X,
    _build_panels,
    _ray_truncation,
    _rotation_angle,
    _theta_terms,
    theta_continuation_eval,
)
from .errors import (
    CapacityExceeded,
    ContractError,
    DomainError,
    PoleAt,
    PrecisionExceeded,
    QuadratureFailure,
)
from .qform import rep_count_array
from .special import log_gamma, power_phase

# Realness tolerance of the rotated product: |Im f| <= REAL_TOL * (|f| + eps).
REAL_TOL = 1.0e-8
# Bisection width target for refined zero ordinates.
REFINE_TOL = 1.0e-8
# Geometric growth of the t-windows sharing one frozen ray profile; the
# rotation angle is fixed at the window top, so the realized cancellation
# stays within GROWTH^(1+o(1)) of the per-t optimum.
_WINDOW_GROWTH = 1.05

_GL16_X, _GL16_W = np.polynomial.legendre.leggauss(16)
# GL-16 panel capacity in radians for ~1e-16 relative panel error.
_GL16_RADIANS = 6.0


# --------------------------------------------------------------------------
# Configuration and weight types
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HardyConfig:
    """Window parameters (T, H, eps) with the derived H0 and K.

    H0 = H * T^(-eps) is the Gaussian width, K = T^(1+2 eps) / H the smooth
    cutoff length; H * K = T^(1+2 eps) exactly as computed.
    """

    T: float
    H: float
    eps: float
    H0: float
    K: float


def hardy_config(T, H=None, eps=0.05):
    """Checked HardyConfig with derived fields; H defaults to T^(3/7+eps).

    Enforces T^(3 eps) <= H <= T^(1/2) exactly as written (eps may be
    negative, which is what makes sub-unit windows admissible).
    """
    T = float(T)
    if T <= 1.0:
        raise DomainError(f"window center must satisfy T > 1, got {T}")
    H = T ** (3.0 / 7.0 + eps) if H is None else float(H)
    eps = float(eps)
    if not T ** (3.0 * eps) <= H <= math.sqrt(T):
        raise DomainError(
            f"H={H} outside [T^(3 eps), sqrt(T)] = "
            f"[{T ** (3.0 * eps)}, {math.sqrt(T)}] for T={T}, eps={eps}"
        )
    return HardyConfig(T=T, H=H, eps=eps, H0=H * T ** (-eps), K=T ** (1.0 + 2.0 * eps) / H)


@dataclass(frozen=True)
class WeightEta:
    """Plateau-with-cosine-ramp cutoff weight.

    eta(x) = 1 for |x - center| <= K/2, eta(x) = 0 for |x - center| >= K,
    and the ramp is 0.5 (1 + cos(pi (u - K/2)/(K/2))) in between (C^1:
    the derivative vanishes at both junctions).
    """

    center: float
    K: float

    def __call__(self, x):
        u = abs(float(x) - self.center)
        half = 0.5 * self.K
        if u <= half:
            return 1.0
        if u >= self.K:
            return 0.0
        return 0.5 * (1.0 + math.cos(math.pi * (u - half) / half))


def weight_eta(form, cfg):
    """The cutoff weight centered at T sqrt(delta) / 2 pi with length cfg.K."""
    return WeightEta(center=cfg.T * math.sqrt(form.delta) / TWO_PI, K=cfg.K)


@dataclass(frozen=True)
class ZeroRecord:
    """A refined sign change: W(t_lo) and W(t_hi) have opposite signs,
    t_lo < gamma < t_hi with t_hi - t_lo <= REFINE_TOL, and w_residual
    = |W(gamma)|."""

    t_lo: float
    t_hi: float
    gamma: float
    w_residual: float


@dataclass(frozen=True)
class LawCheck:
    """Window-law verdict: every [T, T + constant * T^exponent * log^log_power T]
    with T at a scanned zero contains the next zero."""

    name: str
    exponent: float
    constant: float
    log_power: float
    windows: int
    passes: int
    first_violation: tuple | None  # (T, gap, allowed width) or None


@dataclass(frozen=True)
class GapReport:
    zeros: tuple
    max_gap: float
    law_checks: tuple


@dataclass(frozen=True)
class GaussianWindow:
    """Gaussian-weighted window integral report.

    I = int_{-H}^{H} W(T+u) e^{-(u/H0)^2} du, abs_integral the same with
    |W|, deficit = abs_integral - |I| (zero iff W keeps one sign), and
    lower_ratio = |I| / H0, the quantity the odd-order-zero criterion
    bounds from below.  smooth_sum is the brute-force weighted Dirichlet
    sum sum_n eta(n) r_Q(n) n^(-1/2 - iT) over the weight's support.
    """

    I: float
    abs_integral: float
    deficit: float
    lower_ratio: float
    smooth_sum: complex
    quad_tol: float
    zeros_inside: tuple


# --------------------------------------------------------------------------
# The rotation factor and W
# --------------------------------------------------------------------------


def gamma_factor(form, s):
    """gamma(s) = e^{pi i (1/2 - s)/2} (sqrt(delta)/2pi)^s Gamma(s).

    Assembled as a single exponential of pi i (1/2 - s)/2
    + s log(sqrt(delta)/2pi) + log_gamma(s), whose real part stays O(log|s|)
    on the critical line -- |Gamma(1/2+it)| alone underflows doubles past
    t ~ 540, the folded form never does.
    """
    s = complex(s)
    if abs(s.imag) < 1e-12 and s.real <= 0.0 and abs(s.real - round(s.real)) < 1e-12:
        raise PoleAt(s, "Gamma pole")
    expo = 0.5j * math.pi * (0.5 - s)
    expo += s * math.log(math.sqrt(form.delta) / TWO_PI)
    expo += log_gamma(s)
    return cmath.exp(expo)


def gamma_factor_stirling(form, t):
    """(modulus, phase) of gamma(1/2+it) from the leading Stirling form.

    modulus -> delta^(1/4) (exact up to the e^{-2 pi t} tail of cosh) and
    phase = t log(t sqrt(delta)/2pi) - t, the O(1)-accurate rotation angle;
    both are diagnostics against the exact log-gamma route.
    """
    t = float(t)
    if t <= 0.0:
        raise DomainError(f"Stirling diagnostic needs t > 0, got {t}")
    modulus = form.delta ** 0.25 / math.sqrt(1.0 + math.exp(-2.0 * math.pi * t))
    phase = t * math.log(t * math.sqrt(form.delta) / TWO_PI) - t
    return modulus, phase


class CriticalLineEvaluator:
    """W(t) over a t-range, reusing one frozen ray profile per t-window.

    The theta-ray node data (log rho, scaled weights * psi) is independent
    of s, so inside a geometric window [g^k, g^(k+1)) both ray integrals
    at s = 1/2 + it reduce to a single weighted power sum
    z(t) = sum_j v_j e^{i t log rho_j}; the rotation angle and panel layout
    are frozen at the window top.  f(1/2+it) then assembles with all
    exponents folded: gamma(s) zeta(s) = e^{pi i(1/2-s)/2 + i w s} (P + e^{-iw} Q)
    since the (sqrt(delta)/2pi)^s and Gamma factors cancel against the
    completed function's prefactor.
    """

    def __init__(self, form):
        self.form = form
        self._profiles = {}
        self.evals = 0

    def _profile(self, t):
        k = math.floor(math.log(t) / math.log(_WINDOW_GROWTH))
        prof = self._profiles.get(k)
        if prof is None:
            t_hi = _WINDOW_GROWTH ** (k + 1)
            omega = _rotation_angle(t_hi)
            cw = math.cos(omega)
            sw = math.sin(omega)
            A, R = _theta_terms(self.form, cw)
            a0 = float(A[0])
            rho_max = _ray_truncation(a0, cw, 0.0)
            plo, phi = _build_panels(a0, cw, sw, t_hi, rho_max)
            rho, lr, wpsi = _kernels.ray_profile(
                A, R, 1.0, omega, plo, phi, _GL_X, _GL_W, TAILDEC
            )
            v = wpsi / np.sqrt(rho)  # rho^(sigma-1) = rho^(-sigma) at sigma = 1/2
            prof = (omega, lr, v)
            self._profiles[k] = prof
        return prof

    def f_value(self, t):
        """f(1/2 + it) as a complex number (analytically real for t > 0)."""
        t = float(t)
        if t < 2.0:
            raise DomainError(f"critical-line evaluator needs t >= 2, got {t}")
        omega, lr, v = self._profile(t)
        self.evals += 1
        s = complex(0.5, t)
        z = complex(np.dot(v, np.exp(1j * t * lr)))
        combined = (z - 1.0 / s) + cmath.exp(-1j * omega) * (z.conjugate() + 1.0 / (s - 1.0))
        return cmath.exp(0.5j * math.pi * (0.5 - s) + 1j * omega * s) * combined

    def w_value(self, t):
        """Re f(1/2+it) without the realness gate (scan/bisection internal:
        at a refined zero |f| itself vanishes, so the relative gate of
        hardy_w would reject exactly the points the scan converges to)."""
        return self.f_value(t).real


def hardy_w(form, t):
    """W(t) = Re f(1/2+it), f = gamma_factor * zeta (theta continuation).

    Asserts the realness contract |Im f| <= REAL_TOL * (|f| + 1e-30) and
    raises PrecisionExceeded when it fails.  Requires t >= 2.
    """
    w, _ = hardy_w_detail(form, t)
    return w


def hardy_w_detail(form, t):
    """(W(t), imaginary-residual ratio) via the literal product route."""
    t = float(t)
    if t < 2.0:
        raise DomainError(f"hardy_w needs t >= 2, got {t}")
    s = complex(0.5, t)
    f = gamma_factor(form, s) * theta_continuation_eval(form, s).value
    ratio = abs(f.imag) / (abs(f) + 1e-30)
    if abs(f.imag) > REAL_TOL * (abs(f) + 1e-30):
        raise PrecisionExceeded(
            f"imaginary residual {abs(f.imag):.3e} exceeds "
            f"{REAL_TOL:.0e} * |f| = {REAL_TOL * abs(f):.3e} at t={t}"
        )
    return f.real, ratio


# --------------------------------------------------------------------------
# Sign-change scan
# --------------------------------------------------------------------------


def default_scan_step(form, t):
    """pi / (8 log(t sqrt(delta)/2pi)): a fixed fraction of the local mean
    zero spacing.  The log is clamped below at 1/2 so the step stays finite
    near the low end of the admissible range."""
    return math.pi / (8.0 * max(math.log(t * math.sqrt(form.delta) / TWO_PI), 0.5))


def _bisect_bracket(wfun, t_lo, t_hi, w_lo, w_hi):
    """Shrink a sign-change bracket to REFINE_TOL by bisection."""
    for _ in range(80):
        if t_hi - t_lo <= REFINE_TOL:
            break
        mid = 0.5 * (t_lo + t_hi)
        w_mid = wfun(mid)
        if w_mid == 0.0:
            half = 0.25 * REFINE_TOL
            t_lo, t_hi = mid - half, mid + half
            break
        if (w_lo < 0.0) != (w_mid < 0.0):
            t_hi, w_hi = mid, w_mid
        else:
            t_lo, w_lo = mid, w_mid
    gamma = 0.5 * (t_lo + t_hi)
    return t_lo, t_hi, gamma


def sign_change_scan(form, t_from, t_to, step=None, verify_half_step=False):
    """All sign changes of W on [t_from, t_to], refined to REFINE_TOL.

    Walks a grid of the given step (default: the adaptive mean-spacing
    fraction of default_scan_step), brackets each sign change, and bisects.
    A pair of zeros closer than the step can be missed -- that is the
    documented risk of any grid scan; verify_half_step=True repeats the
    scan at half the step and returns the finer result if the counts
    disagree.  Deterministic for fixed inputs.
    """
    t_from = float(t_from)
    t_to = float(t_to)
    if not 2.0 <= t_from < t_to:
        raise ContractError(f"need 2 <= t_from < t_to, got [{t_from}, {t_to}]")
    if step is not None and not step > 0.0:
        raise ContractError(f"need step > 0, got {step}")

    ev = CriticalLineEvaluator(form)
    records = _scan_once(form, ev, t_from, t_to, step)
    if verify_half_step:
        half = None if step is None else 0.5 * step
        finer = _scan_once(form, ev, t_from, t_to, half, shrink=0.5)
        if len(finer) != len(records):
            records = finer
    return records


def _scan_once(form, ev, t_from, t_to, step, shrink=1.0):
    wfun = ev.w_value
    records = []
    t = t_from
    w_t = wfun(t)
    while t < t_to:
        dt = (step if step is not None else default_scan_step(form, t) * shrink)
        t_next = min(t + dt, t_to)
        w_next = wfun(t_next)
        if w_t == 0.0:
            # exact-zero grid point: certify by the surrounding signs
            lo, hi = max(t - 0.25 * REFINE_TOL, t_from), t + 0.25 * REFINE_TOL
            records.append(ZeroRecord(lo, hi, t, abs(wfun(t))))
        elif w_next != 0.0 and (w_t < 0.0) != (w_next < 0.0):
            lo, hi, gamma = _bisect_bracket(wfun, t, t_next, w_t, w_next)
            records.append(ZeroRecord(lo, hi, gamma, abs(wfun(gamma))))
        t, w_t = t_next, w_next
    return records


# --------------------------------------------------------------------------
# Gaussian window integral
# --------------------------------------------------------------------------


def _piece_integral(wfun, T, H0, lo, hi, width_cap):
    """Integral of W(T+u) e^{-(u/H0)^2} over one smooth piece [lo, hi]."""
    n_panels = max(1, math.ceil((hi - lo) / width_cap))
    edges = np.linspace(lo, hi, n_panels + 1)
    total = 0.0
    for k in range(n_panels):
        mid = 0.5 * (edges[k] + edges[k + 1])
        half = 0.5 * (edges[k + 1] - edges[k])
        for x, w in zip(_GL16_X, _GL16_W):
            u = mid + half * x
            g = wfun(T + u) * math.exp(-((u / H0) ** 2))
            total += half * w * g
    return total


def gaussian_integral(form, cfg, quad_tol=1.0e-10, step=None):
    """Gaussian-weighted window integral of W around cfg.T; see GaussianWindow.

    The window [T-H, T+H] is first split at the scanned zeros of W inside
    it, so each piece integrand is smooth and single-signed and the
    composite Gauss-Legendre panels converge spectrally (integrating |W|
    directly would stall on the kinks); then

        I = sum of piece integrals,   abs_integral = sum of |piece integral|,

    which makes deficit = abs_integral - |I| exactly the two-lobe
    cancellation mass.  Panels are refined (halved) until both I and
    abs_integral move less than quad_tol; QuadratureFailure otherwise.
    """
    T, H, H0 = cfg.T, cfg.H, cfg.H0
    if T - H < 2.0:
        raise DomainError(f"window [T-H, T+H] = [{T - H}, {T + H}] leaves t >= 2")
    ev = CriticalLineEvaluator(form)

    scan_step = step if step is not None else min(
        math.pi / (4.0 * max(math.log(T * math.sqrt(form.delta) / TWO_PI), 0.5)),
        H0 / 4.0,
    )
    zeros = tuple(
        r.gamma for r in _scan_once(form, ev, T - H, T + H, scan_step)
    )
    cuts = [-H] + [z - T for z in zeros] + [H]

    freq = max(math.log((T + H) * math.sqrt(form.delta) / TWO_PI), 0.5)
    width = min(_GL16_RADIANS / freq, 0.5 * H0, H)
    prev_i = prev_a = None
    for _ in range(12):
        pieces = [
            _piece_integral(ev.w_value, T, H0, lo, hi, width)
            for lo, hi in zip(cuts[:-1], cuts[1:])
        ]
        total_i = math.fsum(pieces)
        total_a = math.fsum(abs(p) for p in pieces)
        if prev_i is not None and (
            abs(total_i - prev_i) <= quad_tol and abs(total_a - prev_a) <= quad_tol
        ):
            deficit = total_a - abs(total_i)
            return GaussianWindow(
                I=total_i,
                abs_integral=total_a,
                deficit=deficit,
                lower_ratio=abs(total_i) / H0,
                smooth_sum=smooth_weighted_sum(form, cfg),
                quad_tol=quad_tol,
                zeros_inside=zeros,
            )
        prev_i, prev_a = total_i, total_a
        width *= 0.5
    raise QuadratureFailure(
        f"window integral did not converge to {quad_tol:.0e} in 12 refinements"
    )


def smooth_weighted_sum(form, cfg, n_cap=10_000_000):
    """Brute-force sum_n eta(n) r_Q(n) n^(-1/2 - iT) over eta's support.

    The diagnostic companion of the window integral: the smooth Dirichlet
    sum whose analytic estimation is the exponential-sum machinery's job.
    """
    eta = weight_eta(form, cfg)
    n_top = math.ceil(eta.center + eta.K)
    if n_top > n_cap:
        raise CapacityExceeded(
            f"smooth sum needs {n_top} representation counts (cap {n_cap})"
        )
    counts = rep_count_array(form, n_top)
    t = cfg.T
    acc = 0.0 + 0.0j
    for n in range(1, n_top + 1):
        if not counts[n]:
            continue
        w = eta(n)
        if w == 0.0:
            continue
        theta = power_phase(n, t).theta
        acc += w * counts[n] * n ** -0.5 * cmath.exp(-1j * theta)
    return acc


# --------------------------------------------------------------------------
# Gap statistics
# --------------------------------------------------------------------------


def gap_report(zeros, laws):
    """Max consecutive gap plus window-law verdicts; see GapReport.

    Each law is (exponent, constant) or (exponent, constant, log_power);
    the window [T, T + c T^e log^p T] anchored at each zero but the last
    must contain the next zero.  (Anchoring at the left zero is the worst
    case: the window width only grows with T inside a gap.)
    """
    zs = tuple(float(z) for z in zeros)
    if len(zs) < 2:
        raise ContractError(f"gap report needs >= 2 zeros, got {len(zs)}")
    if any(b <= a for a, b in zip(zs, zs[1:])):
        raise ContractError("zeros must be strictly increasing")

    gaps = [b - a for a, b in zip(zs, zs[1:])]
    checks = []
    for law in laws:
        if len(law) == 2:
            e, c = law
            p = 0.0
        else:
            e, c, p = law
        e, c, p = float(e), float(c), float(p)
        passes = 0
        first_violation = None
        for a, b in zip(zs, zs[1:]):
            width = c * a ** e * (math.log(a) ** p if p else 1.0)
            if b - a <= width:
                passes += 1
            elif first_violation is None:
                first_violation = (a, b - a, width)
        name = f"{c:g}*T^{e:g}" + (f"*log^{p:g}T" if p else "")
        checks.append(
            LawCheck(
                name=name,
                exponent=e,
                constant=c,
                log_power=p,
                windows=len(gaps),
                passes=passes,
                first_violation=first_violation,
            )
        )
    return GapReport(zeros=zs, max_gap=max(gaps), law_checks=tuple(checks))
