"""Tests for the exponential-sum lemma checkers.

Hand-checkable cases first (constant and spike sequences, where both sides
of the differencing inequality reduce to closed forms), then the seeded
random suites with frozen tallies, then the hypothesis-violation paths.
The shift-2 differencing weight goes negative by design -- the checker
tabulates the literal printed form instead of silently clamping -- so the
shift-2 suite freezes a nonzero violation count.
"""

import math

import pytest

from epzeta.errors import ContractError, HypothesisViolated
from epzeta.expsum import (
    LemmaTrial,
    b_process_transform,
    bprocess_standard_suite,
    vdc_second_derivative_bound,
    vdc_standard_suite,
    weyl_difference_check,
    weyl_random_suite,
)

SEED = 20260815


# --------------------------------------------------------------------------
# Weyl differencing
# --------------------------------------------------------------------------


def test_weyl_constant_sequence_closed_form():
    """All-ones of length 64 with H = 64: lhs = 64^2 = 4096 and
    rhs = 2 * (64 + (1/32) sum_{j<64} j^2) = 5462 exactly."""
    res = weyl_difference_check(
        LemmaTrial(kind="weyl", payload=(1.0,) * 64, H=64)
    )
    assert res.lhs == pytest.approx(4096.0, rel=1e-12)
    assert res.rhs == pytest.approx(5462.0, rel=1e-12)
    assert res.rhs_clamped == pytest.approx(5462.0, rel=1e-12)
    assert res.holds and res.holds_clamped


def test_weyl_spike_sequence():
    """A single unit entry has no correlations: lhs = 1,
    rhs = (L + H)/H * 1 = L + 1 at H = 1."""
    xi = (0.0,) * 30 + (1.0,) + (0.0,) * 33
    res = weyl_difference_check(LemmaTrial(kind="weyl", payload=xi, H=1))
    assert res.lhs == pytest.approx(1.0, rel=1e-12)
    assert res.rhs == pytest.approx(65.0, rel=1e-12)
    assert res.holds


def test_weyl_random_suite_shift_one():
    """1000 seeded random sequences: the shift-1 inequality never fails,
    with worst margin well below zero."""
    report = weyl_random_suite(1000, SEED)
    assert report.trials == 1000
    assert report.shift == 1
    assert report.violations == 0
    assert report.violations_clamped == 0
    assert report.worst_margin == pytest.approx(-1.320267099453482, rel=1e-9)
    assert report.worst_margin < 0.0


def test_weyl_shift_two_tabulation():
    """The literal shift-2 weight 1 - 2h/H goes negative for h > H/2; the
    printed inequality then genuinely fails on some sequences, and the
    checker reports rather than repairs it.  Frozen seeded tally."""
    report = weyl_random_suite(200, SEED, shift=2)
    assert report.trials == 200
    assert report.violations == 14
    assert report.violations_clamped == 14
    assert report.worst_margin == pytest.approx(80.8963711967242, rel=1e-9)
    assert report.worst_margin > 0.0


def test_weyl_contract_errors():
    """Empty sequences, bad H, and wrong trial kinds are refused."""
    with pytest.raises(ContractError):
        weyl_difference_check(LemmaTrial(kind="weyl", payload=(), H=4))
    with pytest.raises(ContractError):
        weyl_difference_check(LemmaTrial(kind="weyl", payload=(1.0,), H=0))
    with pytest.raises(ContractError):
        weyl_difference_check(LemmaTrial(kind="vdc", payload=(1.0,), H=4))


# --------------------------------------------------------------------------
# Second-derivative van der Corput bound
# --------------------------------------------------------------------------


def test_vdc_quadratic_phase():
    """f = 0.01 x^2 has f'' = 0.02 exactly (alpha = 1); frozen ratio."""
    trial = LemmaTrial(
        kind="vdc",
        payload=(lambda x: 0.01 * x * x, lambda x: 0.02),
        interval=(1.0, 129.0),
        lam=0.02,
        alpha=1.0,
    )
    res = vdc_second_derivative_bound(trial)
    assert res.bound == pytest.approx(
        128.0 * math.sqrt(0.02) + 1.0 / math.sqrt(0.02), rel=1e-12
    )
    assert res.actual == pytest.approx(17.108666352821505, rel=1e-9)
    assert res.ratio == pytest.approx(0.6796434828729327, rel=1e-9)
    assert res.ratio < 1.0


def test_vdc_hypothesis_violations():
    """Linear phases (f'' = 0) and out-of-window curvatures are named."""
    linear = LemmaTrial(
        kind="vdc",
        payload=(lambda x: 0.5 * x, lambda x: 0.0),
        interval=(1.0, 65.0),
        lam=0.02,
        alpha=1.0,
    )
    with pytest.raises(HypothesisViolated):
        vdc_second_derivative_bound(linear)
    too_curved = LemmaTrial(
        kind="vdc",
        payload=(lambda x: 0.01 * x * x, lambda x: 0.02),
        interval=(1.0, 65.0),
        lam=0.005,
        alpha=1.0,  # window [0.005, 0.005] misses 0.02
    )
    with pytest.raises(HypothesisViolated):
        vdc_second_derivative_bound(too_curved)
    with pytest.raises(HypothesisViolated):
        vdc_second_derivative_bound(
            LemmaTrial(kind="vdc", payload=(lambda x: x, lambda x: 1.0),
                       interval=(1.0, 9.0), lam=0.0, alpha=1.0)
        )
    with pytest.raises(ContractError):
        vdc_second_derivative_bound(
            LemmaTrial(kind="vdc", payload=(lambda x: x, lambda x: 1.0),
                       interval=(9.0, 1.0), lam=1.0, alpha=1.0)
        )


def test_vdc_standard_suite_frozen():
    """50 seeded x^{3/2} phases: worst ratio barely above 1, far below 10."""
    report = vdc_standard_suite(50, 123)
    assert report.count == 50
    assert report.max_ratio == pytest.approx(1.0067882965922816, rel=1e-9)
    assert report.max_ratio <= 10.0


# --------------------------------------------------------------------------
# B-process transform
# --------------------------------------------------------------------------


def _sqrt_phase_trial(amp, n_scale, interval):
    return LemmaTrial(
        kind="bprocess",
        payload=(
            lambda x: amp * math.sqrt(x),
            lambda x: 0.5 * amp / math.sqrt(x),
            lambda x: -0.25 * amp * x ** -1.5,
        ),
        interval=interval,
        F=amp * math.sqrt(n_scale),
        n_scale=n_scale,
    )


def test_bprocess_hand_case():
    """A = 200 on [100, 200]: three dual points nu in {8, 9, 10}, and the
    transform matches within 0.72 of the raw error term (frozen)."""
    res = b_process_transform(_sqrt_phase_trial(200.0, 100.0, (100.0, 200.0)))
    assert res.stationary_count == 3
    diff = abs(res.lhs - res.rhs)
    assert diff / res.raw_error_term == pytest.approx(0.7116236918575475, rel=1e-9)
    assert diff <= res.error_bound
    assert res.raw_error_term == pytest.approx(
        math.log(2000.0 / 100.0 + 2.0) + 100.0 / math.sqrt(2000.0), rel=1e-12
    )


def test_bprocess_empty_dual():
    """An interval whose f'-range contains no integer has an empty dual sum."""
    res = b_process_transform(_sqrt_phase_trial(200.0, 100.0, (110.0, 120.0)))
    assert res.stationary_count == 0
    assert res.rhs == 0j
    assert abs(res.lhs) > 0.0


def test_bprocess_hypothesis_violations():
    """Positive curvature, a range outside [N, 2N], and a comparability
    mismatch between F and f'' are all named."""
    convex = LemmaTrial(
        kind="bprocess",
        payload=(
            lambda x: -200.0 * math.sqrt(x),
            lambda x: -100.0 / math.sqrt(x),
            lambda x: 50.0 * x ** -1.5,
        ),
        interval=(100.0, 200.0), F=2000.0, n_scale=100.0,
    )
    with pytest.raises(HypothesisViolated):
        b_process_transform(convex)
    with pytest.raises(HypothesisViolated):
        b_process_transform(_sqrt_phase_trial(200.0, 100.0, (90.0, 200.0)))
    mismatched = _sqrt_phase_trial(200.0, 100.0, (100.0, 200.0))
    mismatched = LemmaTrial(
        kind="bprocess", payload=mismatched.payload,
        interval=mismatched.interval, F=1e7, n_scale=100.0,
    )
    with pytest.raises(HypothesisViolated):
        b_process_transform(mismatched)
    with pytest.raises(ContractError):
        b_process_transform(
            LemmaTrial(kind="weyl", payload=(1.0,), H=4)
        )


def test_bprocess_standard_suite_frozen():
    """20 seeded square-root phases: single constant c_max below 10."""
    report = bprocess_standard_suite(20, 321)
    assert report.count == 20
    assert report.c_max == pytest.approx(0.7108808705569926, rel=1e-9)
    assert report.c_max <= 10.0
    assert report.max_stationary_count == 3
