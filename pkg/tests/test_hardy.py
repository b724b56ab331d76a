"""Tests for the rotated critical-line function W and its window machinery.

Frozen reference values for W on the (1, 0, 1) form come from the factored
route 4 zeta(s) L(s, chi_4) evaluated with mpmath at 40 digits together with
the literal rotation factor; zero ordinates come from the independent
product-formula scan in oracles.py (recorded there before being trusted).
"""

import cmath
import math

import mpmath as mp
import pytest

from epzeta.errors import ContractError, DomainError, PoleAt
from epzeta.hardy import (
    REAL_TOL,
    REFINE_TOL,
    CriticalLineEvaluator,
    WeightEta,
    default_scan_step,
    gamma_factor,
    gamma_factor_stirling,
    gap_report,
    gaussian_integral,
    hardy_config,
    hardy_w,
    hardy_w_detail,
    sign_change_scan,
    smooth_weighted_sum,
    weight_eta,
)
from epzeta.qform import rep_count_array

# Product-formula zero ordinates on [5, 15] for x^2 + y^2 (oracles.py,
# bisection refined to 1e-10).  The last is also the first ordinate of the
# classical zeta zero, as the factored form demands.
PRODUCT_ZEROS_5_15 = (
    6.020948904715478,
    10.243770304135978,
    12.988098012320698,
    14.134725141711533,
)

# W(t) on x^2 + y^2 via mpmath: Re of the rotation factor times
# 4 zeta(s) L(s, chi_4) at s = 1/2 + it, 40 digits.
_W_SQUARE_REF = {
    5.5: -2.8999843905570973,
    12.3: -7.8002980336555085,
    30.7: -5.3619895478120044,
}


def _gamma_factor_ref(form, s):
    """Literal e^{pi i (1/2-s)/2} (sqrt(delta)/2pi)^s Gamma(s) at 40 digits."""
    with mp.workdps(40):
        z = mp.mpc(s)
        val = (
            mp.e ** (1j * mp.pi * (mp.mpf(1) / 2 - z) / 2)
            * (mp.sqrt(form.delta) / (2 * mp.pi)) ** z
            * mp.gamma(z)
        )
        return complex(val)


# --------------------------------------------------------------------------
# Window configuration
# --------------------------------------------------------------------------


def test_hardy_config_derived_fields(form_square):
    """H0 and K are the stated powers of T; H * K = T^(1+2 eps) exactly."""
    cfg = hardy_config(1000.0, H=20.0, eps=0.05)
    assert cfg.H0 == pytest.approx(20.0 * 1000.0 ** -0.05, rel=1e-15)
    assert cfg.K == pytest.approx(1000.0 ** 1.1 / 20.0, rel=1e-15)
    assert cfg.H * cfg.K == pytest.approx(1000.0 ** 1.1, rel=1e-14)
    # negative eps makes a sub-unit H admissible
    cfg = hardy_config(100.0, H=1.0, eps=-0.4)
    assert cfg.H0 == pytest.approx(100.0 ** 0.4, rel=1e-15)
    assert cfg.K == pytest.approx(100.0 ** 0.2, rel=1e-15)


def test_hardy_config_default_h():
    """Default H is T^(3/7 + eps) and sits inside the admissible band."""
    cfg = hardy_config(10000.0)
    assert cfg.H == pytest.approx(10000.0 ** (3.0 / 7.0 + 0.05), rel=1e-15)
    assert 10000.0 ** (3.0 * 0.05) <= cfg.H <= 100.0


def test_hardy_config_rejects_bad_windows():
    """T <= 1 and H outside [T^(3 eps), sqrt(T)] are rejected."""
    with pytest.raises(DomainError):
        hardy_config(1.0)
    with pytest.raises(DomainError):
        hardy_config(100.0, H=11.0)  # > sqrt(T) = 10
    with pytest.raises(DomainError):
        hardy_config(100.0, H=1.5, eps=0.1)  # < T^(3 eps) ~ 3.98


# --------------------------------------------------------------------------
# Cutoff weight
# --------------------------------------------------------------------------


def test_weight_eta_plateau_ramp_support(form_square):
    """eta is 1 on the plateau, 0 outside, 1/2 at mid-ramp, C^1 at joins."""
    cfg = hardy_config(100.0, H=1.0, eps=-0.4)
    eta = weight_eta(form_square, cfg)
    assert eta.center == pytest.approx(100.0 * 2.0 / (2.0 * math.pi), rel=1e-15)
    assert eta.K == pytest.approx(cfg.K, rel=1e-15)
    c, k = eta.center, eta.K
    assert eta(c) == 1.0
    assert eta(c + 0.5 * k) == 1.0
    assert eta(c - 0.5 * k) == 1.0
    assert eta(c + k) == 0.0
    assert eta(c - k) == 0.0
    assert eta(c + 0.75 * k) == pytest.approx(0.5, abs=1e-12)
    # ramp is monotone decreasing
    us = [0.5 * k + j * (0.5 * k) / 8.0 for j in range(9)]
    vals = [eta(c + u) for u in us]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    # one-sided slopes vanish at both junctions (C^1 joins)
    h = 1e-6
    for u0 in (0.5 * k, k):
        slope = (eta(c + u0 + h) - eta(c + u0 - h)) / (2.0 * h)
        assert abs(slope) <= 1e-4


def test_weight_eta_is_even_in_the_offset():
    """eta depends on |x - center| only."""
    eta = WeightEta(center=50.0, K=4.0)
    for u in (0.3, 1.7, 2.2, 3.9):
        assert eta(50.0 + u) == eta(50.0 - u)


# --------------------------------------------------------------------------
# Rotation factor
# --------------------------------------------------------------------------


def test_gamma_factor_matches_reference(form_square, form_hex):
    """gamma(s) agrees with the 40-digit literal product to 1e-11."""
    for form in (form_square, form_hex):
        for s in (complex(0.5, 20.0), complex(0.3, 5.0), complex(2.0, 0.0)):
            got = gamma_factor(form, s)
            ref = _gamma_factor_ref(form, s)
            assert abs(got - ref) <= 1e-11 * abs(ref)


def test_gamma_factor_pole_rejections(form_square):
    """Non-positive integers are Gamma poles."""
    for s in (0.0, -1.0, -3.0):
        with pytest.raises(PoleAt):
            gamma_factor(form_square, s)


def test_gamma_factor_high_ordinate_stability(form_square):
    """At t = 1000 the folded exponential neither under- nor overflows.

    |Gamma(1/2 + 1000 i)| alone is ~ 1e-683 (a double underflows past
    t ~ 540); the assembled factor keeps modulus delta^(1/4).
    """
    s = complex(0.5, 1000.0)
    got = gamma_factor(form_square, s)
    assert abs(got) == pytest.approx(4.0 ** 0.25, rel=1e-12)
    ref = _gamma_factor_ref(form_square, s)
    assert abs(got - ref) <= 1e-11 * abs(ref)


def test_gamma_factor_stirling_diagnostics(form_square):
    """Stirling modulus is ~1e-13 accurate; phase error decays like 1/(24t)."""
    for t in (50.0, 1000.0):
        modulus, phase = gamma_factor_stirling(form_square, t)
        exact = gamma_factor(form_square, complex(0.5, t))
        assert modulus == pytest.approx(abs(exact), rel=1e-10)
        dphase = (cmath.phase(exact) - phase) % (2.0 * math.pi)
        if dphase > math.pi:
            dphase -= 2.0 * math.pi
        assert abs(dphase) <= 1.0 / (20.0 * t)
    with pytest.raises(DomainError):
        gamma_factor_stirling(form_square, 0.0)


# --------------------------------------------------------------------------
# W itself
# --------------------------------------------------------------------------


def test_hardy_w_frozen_product_values(form_square):
    """W on x^2 + y^2 matches the factored 4 zeta L(chi_4) route to 1e-10."""
    for t, ref in _W_SQUARE_REF.items():
        assert hardy_w(form_square, t) == pytest.approx(ref, rel=1e-10)


def test_hardy_w_realness_ratio(form_square, form_hex, form_213):
    """|Im f| / |f| stays below the 1e-8 realness gate across forms."""
    for form in (form_square, form_hex, form_213):
        for k in range(10):
            t = 5.0 + 4.7 * k
            _, ratio = hardy_w_detail(form, t)
            assert ratio <= REAL_TOL


def test_hardy_w_domain(form_square):
    """The rotated function is only defined for t >= 2 here."""
    with pytest.raises(DomainError):
        hardy_w(form_square, 1.5)


def test_evaluator_consistent_with_literal_route(form_square):
    """The frozen-profile evaluator agrees with the per-t theta route.

    Different quadrature layouts (the evaluator freezes the rotation angle
    at the top of a 5% window), so agreement is to quadrature accuracy,
    not bitwise.
    """
    ev = CriticalLineEvaluator(form_square)
    for t in (5.5, 12.3, 30.7, 47.1):
        a = ev.w_value(t)
        b = hardy_w(form_square, t)
        assert abs(a - b) <= 1e-9 * (abs(b) + 1.0)
    assert ev.evals == 4


# --------------------------------------------------------------------------
# Sign-change scan
# --------------------------------------------------------------------------


def test_scan_finds_frozen_zeros(form_square):
    """The default scan on [5, 15] finds the four product-oracle ordinates.

    Each refined bracket has width <= REFINE_TOL, contains its gamma, and
    |W(gamma)| is small; the ordinates match the oracle to 1e-8.
    """
    records = sign_change_scan(form_square, 5.0, 15.0)
    assert len(records) == len(PRODUCT_ZEROS_5_15)
    for rec, ref in zip(records, PRODUCT_ZEROS_5_15):
        assert abs(rec.gamma - ref) <= 1e-8
        assert rec.t_lo < rec.gamma < rec.t_hi
        assert rec.t_hi - rec.t_lo <= REFINE_TOL * (1.0 + 1e-9)
        assert rec.w_residual <= 1e-6


def test_scan_bracket_signs(form_square):
    """W really changes sign across each refined bracket."""
    records = sign_change_scan(form_square, 5.0, 15.0)
    ev = CriticalLineEvaluator(form_square)
    for rec in records:
        assert ev.w_value(rec.t_lo) * ev.w_value(rec.t_hi) < 0.0


def test_scan_coarse_and_half_step(form_square):
    """A 0.5 grid still resolves [5, 15] (min spacing ~1.15), and the
    half-step verification pass agrees with it."""
    coarse = sign_change_scan(form_square, 5.0, 15.0, step=0.5)
    assert [round(r.gamma, 6) for r in coarse] == [
        round(z, 6) for z in PRODUCT_ZEROS_5_15
    ]
    verified = sign_change_scan(
        form_square, 5.0, 15.0, step=0.5, verify_half_step=True
    )
    assert len(verified) == len(coarse)


def test_scan_contract_errors(form_square):
    """Range and step contracts."""
    with pytest.raises(ContractError):
        sign_change_scan(form_square, 1.0, 15.0)
    with pytest.raises(ContractError):
        sign_change_scan(form_square, 9.0, 5.0)
    with pytest.raises(ContractError):
        sign_change_scan(form_square, 5.0, 15.0, step=0.0)


def test_default_scan_step_clamp(form_square):
    """Step is pi / (8 log(t sqrt(delta)/2pi)) with the log clamped at 1/2."""
    assert default_scan_step(form_square, 2.1) == pytest.approx(
        math.pi / 4.0, rel=1e-15
    )
    t = 1000.0
    expected = math.pi / (8.0 * math.log(t * 2.0 / (2.0 * math.pi)))
    assert default_scan_step(form_square, t) == pytest.approx(expected, rel=1e-15)


# --------------------------------------------------------------------------
# Gaussian window integral
# --------------------------------------------------------------------------


def test_gaussian_zero_free_window(form_square):
    """A window between consecutive zeros has zero cancellation deficit.

    [7.1, 9.1] sits strictly between the ordinates 6.02 and 10.24; W keeps
    one sign there, so abs_integral equals |I| up to quadrature.
    """
    cfg = hardy_config(8.1, H=1.0, eps=-0.4)
    win = gaussian_integral(form_square, cfg, quad_tol=1e-10)
    assert win.zeros_inside == ()
    assert win.deficit <= 3e-10
    assert win.abs_integral == pytest.approx(abs(win.I), abs=3e-10)
    assert win.lower_ratio > 1.0
    assert win.quad_tol == 1e-10


def test_gaussian_one_zero_window(form_square):
    """A window straddling one zero shows an order-one deficit.

    [9.74, 10.74] contains exactly the ordinate 10.2437...; the two lobes
    cancel in I but not in abs_integral.
    """
    cfg = hardy_config(10.24, H=0.5, eps=-0.4)
    win = gaussian_integral(form_square, cfg, quad_tol=1e-10)
    assert len(win.zeros_inside) == 1
    assert abs(win.zeros_inside[0] - PRODUCT_ZEROS_5_15[1]) <= 1e-7
    assert win.deficit > 1.0
    assert win.deficit > 10.0 * win.quad_tol
    assert abs(win.I) < win.abs_integral


def test_gaussian_window_domain(form_square):
    """Windows reaching below t = 2 are rejected."""
    cfg = hardy_config(2.5, H=1.0, eps=-0.4)
    with pytest.raises(DomainError):
        gaussian_integral(form_square, cfg)


# --------------------------------------------------------------------------
# Smooth weighted sum
# --------------------------------------------------------------------------


def test_smooth_weighted_sum_matches_reference(form_square):
    """The brute-force weighted Dirichlet sum matches a 40-digit loop."""
    cfg = hardy_config(100.0, H=1.0, eps=-0.4)
    got = smooth_weighted_sum(form_square, cfg)
    eta = weight_eta(form_square, cfg)
    n_top = math.ceil(eta.center + eta.K)
    counts = rep_count_array(form_square, n_top)
    with mp.workdps(40):
        acc = mp.mpc(0)
        for n in range(1, n_top + 1):
            if counts[n]:
                w = eta(n)
                if w:
                    acc += w * counts[n] * mp.power(n, mp.mpc(-0.5, -cfg.T))
        ref = complex(acc)
    assert abs(got - ref) <= 1e-12


# --------------------------------------------------------------------------
# Gap statistics
# --------------------------------------------------------------------------


def test_gap_report_synthetic_laws():
    """Hand-checkable law verdicts on the zeros 10, 11, 12.5, 15.

    Gaps are 1, 1.5, 2.5.  A constant width 3 passes everywhere; width 2
    first fails at the 2.5 gap anchored at 12.5; width log T passes since
    log 12.5 = 2.526 > 2.5.
    """
    zeros = (10.0, 11.0, 12.5, 15.0)
    report = gap_report(zeros, [(0.0, 3.0), (0.0, 2.0), (0.0, 1.0, 1.0)])
    assert report.max_gap == pytest.approx(2.5, rel=1e-15)
    always, tight, loglaw = report.law_checks

    assert always.name == "3*T^0"
    assert (always.windows, always.passes) == (3, 3)
    assert always.first_violation is None

    assert tight.name == "2*T^0"
    assert (tight.windows, tight.passes) == (3, 2)
    anchor, gap, width = tight.first_violation
    assert anchor == pytest.approx(12.5)
    assert gap == pytest.approx(2.5)
    assert width == pytest.approx(2.0)

    assert loglaw.name == "1*T^0*log^1T"
    assert loglaw.passes == 3


def test_gap_report_contracts():
    """At least two strictly increasing zeros are required."""
    with pytest.raises(ContractError):
        gap_report((10.0,), [(0.0, 1.0)])
    with pytest.raises(ContractError):
        gap_report((10.0, 10.0, 11.0), [(0.0, 1.0)])
