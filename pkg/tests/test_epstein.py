"""Lattice zeta evaluation: series, continuation, approximation, symmetry."""

import math
import random

import pytest

from epzeta.epstein import (
    ApproxParams,
    approx_eval,
    dirichlet_series_eval,
    functional_equation_residual,
    theta_continuation_eval,
)
from epzeta.errors import DomainError, PoleAt
from epzeta.qform import validate_form

from oracles import zeta_ref

# Frozen mpmath split-point references (tests/oracles.zeta_ref, 30+ digits).
_ZETA2_SQUARE = 6.02681203969194  # = 4 zeta(2) L(2, chi_4)
_ZETA2_HEX = 7.711145732904896
_ZETA_213_HALF_10 = complex(1.567685615262922, -1.991607203084521)


def test_frozen_point_values(form_square, form_hex, form_213):
    """Continuation matches the frozen incomplete-gamma references."""
    assert abs(theta_continuation_eval(form_square, 2.0).value - _ZETA2_SQUARE) <= 1e-12
    assert abs(theta_continuation_eval(form_hex, 2.0).value - _ZETA2_HEX) <= 1e-12
    got = theta_continuation_eval(form_213, 0.5 + 10j).value
    assert abs(got - _ZETA_213_HALF_10) <= 1e-10


def test_theta_against_live_oracle(form_square, form_hex, form_213):
    """Continuation vs the mpmath oracle at mixed points; the reported
    err_estimate must cover the true error (with 1e-12 absolute floor
    for the oracle's own rounding)."""
    points = [2.5, 0.5 + 5j, -0.5 + 12j, 1.5 + 3j, 0.0 + 25j, 1.2 - 17j]
    for form in (form_square, form_hex, form_213):
        for s in points:
            res = theta_continuation_eval(form, s)
            ref = zeta_ref(form, s)
            err = abs(res.value - ref)
            assert err <= res.err_estimate + 1e-12, (form.a, form.b, form.c, s, err)
            assert err <= 1e-9, (form.a, form.b, form.c, s, err)


def test_special_values(form_square, form_hex, form_213):
    """zeta_Q(0) = -1 for every form; the square lattice also vanishes at
    the negative integers (trivial zeros of both product factors)."""
    for form in (form_square, form_hex, form_213):
        assert abs(theta_continuation_eval(form, 0.0).value + 1.0) <= 1e-10
    assert abs(theta_continuation_eval(form_square, -1.0).value) <= 1e-12
    assert abs(theta_continuation_eval(form_square, -2.0).value) <= 1e-12


def test_pole_at_one(form_square):
    with pytest.raises(PoleAt):
        theta_continuation_eval(form_square, 1.0)


def test_residue(form_square, form_hex, form_213):
    """(s-1) zeta_Q(s) at s = 1 + 1e-6 is 2 pi / sqrt(delta) to 1e-4."""
    for form in (form_square, form_hex, form_213):
        val = theta_continuation_eval(form, 1.0 + 1e-6).value
        target = 2.0 * math.pi / math.sqrt(form.delta)
        assert abs(1e-6 * val - target) <= 1e-4


def test_functional_equation_seeded(form_square, form_hex, form_213):
    """Completed-function symmetry residual < 1e-8 at seeded random s."""
    rng = random.Random(61803)
    for form in (form_square, form_hex, form_213):
        for _ in range(6):
            s = complex(rng.uniform(-2.0, 3.0), rng.uniform(-30.0, 30.0))
            if abs(s) < 0.2 or abs(s - 1) < 0.2:
                continue  # the completed function's poles
            assert functional_equation_residual(form, s) < 1e-8, (form.a, s)


def test_direct_series_matches_theta(form_square, form_213):
    """For sigma > 1 the truncated series agrees within its tail bound."""
    for form in (form_square, form_213):
        for s in (2.0, 1.5 + 4j, 3.0 - 7j):
            direct = dirichlet_series_eval(form, s, 100_000)
            ref = theta_continuation_eval(form, s)
            assert abs(direct.value - ref.value) <= direct.err_estimate + ref.err_estimate
            assert direct.method == "direct"


def test_direct_series_domain():
    form = validate_form(1, 0, 1)
    with pytest.raises(DomainError):
        dirichlet_series_eval(form, 1.0 + 5j, 1000)
    with pytest.raises(DomainError):
        dirichlet_series_eval(form, 2.0, 0)


def test_approx_error_law(form_square):
    """|approx - theta| <= 5 t X^{-1/2}: the error estimate's own constant."""
    for t in (10.0, 20.0):
        ref = theta_continuation_eval(form_square, 0.5 + 1j * t).value
        for X in (t * t, t ** 3):
            res = approx_eval(form_square, 0.5 + 1j * t, ApproxParams(X=X, t=t))
            assert abs(res.value - ref) <= 5.0 * t / math.sqrt(X), (t, X)


def test_approx_hypothesis_window(form_square):
    """X outside [t^2, t^6], t < 2, off-line s, mismatched t all rejected."""
    with pytest.raises(DomainError):
        ApproxParams(X=50.0, t=10.0).validate()  # X < t^2
    with pytest.raises(DomainError):
        ApproxParams(X=1e13, t=10.0).validate()  # X > t^6
    with pytest.raises(DomainError):
        ApproxParams(X=100.0, t=1.0).validate()  # t < 2
    with pytest.raises(DomainError):
        approx_eval(form_square, 1.0 + 10j, ApproxParams(X=1e4, t=10.0))
    with pytest.raises(DomainError):
        approx_eval(form_square, 0.5 + 10j, ApproxParams(X=1e4, t=11.0))


def test_err_estimates_positive(form_square):
    for res in (
        dirichlet_series_eval(form_square, 2.0, 1000),
        theta_continuation_eval(form_square, 0.5 + 20j),
        approx_eval(form_square, 0.5 + 10j, ApproxParams(X=1e3, t=10.0)),
    ):
        assert res.err_estimate > 0.0
