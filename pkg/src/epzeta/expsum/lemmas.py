"""Numerical checkers for the classical exponential-sum tools used by the chain.

Three checkers, one per tool: generalized Weyl differencing (an inequality
between a squared sum and its shifted correlations), the stationary-phase
B-process transform (a sum of e(f(n)) against its dual sum over the critical
points of the Legendre-type phase), and the second-derivative van der Corput
bound.  Each checker evaluates both sides of its statement directly, so the
suites double as regression anchors for the printed forms -- including the
literal (possibly negative) Weyl weight, which is tabulated alongside a
clamped variant rather than silently corrected.

All phases are in cycles: e(w) = exp(2 pi i w).
"""

import math
import random
from dataclasses import dataclass

import numpy as np

from ..errors import ContractError, HypothesisViolated, RootFindFailure
from ..special import e_unit

__all__ = [
    "BProcessCheck",
    "BProcessSuiteReport",
    "LemmaTrial",
    "VdcBound",
    "VdcSuiteReport",
    "WeylCheck",
    "WeylSuiteReport",
    "b_process_transform",
    "bprocess_standard_suite",
    "vdc_second_derivative_bound",
    "vdc_standard_suite",
    "weyl_difference_check",
    "weyl_random_suite",
]

_BISECT_STEPS = 100


@dataclass(frozen=True)
class LemmaTrial:
    """One checker trial; kind selects which fields are meaningful.

    kind "weyl": payload is the complex sequence xi supported on (0, len],
    H is the averaging length, shift the index-shift multiplier (the
    statement's lambda).  kind "vdc": payload is (f, f2) callables, interval
    the summation range [a, b], lam/alpha the two-sided second-derivative
    window lam <= |f''| <= alpha*lam.  kind "bprocess": payload is
    (f, fp, f2) callables, interval [a, b] inside [n_scale, 2*n_scale], and
    F the derivative scale with f'' comparable to F / n_scale^2.
    """

    kind: str
    payload: object
    H: int = 0
    shift: int = 1
    alpha: float = 1.0
    lam: float = 0.0
    F: float = 0.0
    n_scale: float = 0.0
    interval: tuple = ()


def _require_kind(trial, kind):
    if trial.kind != kind:
        raise ContractError(f"trial kind {trial.kind!r} passed to the {kind} checker")


# --------------------------------------------------------------------------
# Generalized Weyl differencing
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class WeylCheck:
    """Both sides of the differencing inequality, literal and clamped.

    rhs uses the printed weight (1 - shift*|h|/H), which goes negative for
    shift >= 2 once |h| > H/shift; rhs_clamped replaces it by
    max(0, 1 - shift*|h|/H).  holds / holds_clamped compare lhs against each
    with a 1e-9 relative slack.
    """

    lhs: float
    rhs: float
    holds: bool
    rhs_clamped: float
    holds_clamped: bool


def weyl_difference_check(trial):
    """Evaluate |sum xi|^2 <= ((b-a)+H)/H * sum_{|h|<H} w(h) corr(shift*h) literally.

    The sequence is supported on (0, L]; corr(j) = sum_n xi(n) conj(xi(n-j))
    vanishes for |j| >= L.  Pairing +h with -h makes both sides real, so the
    complex correlations enter through their real parts only.
    """
    _require_kind(trial, "weyl")
    xi = np.asarray(trial.payload, dtype=np.complex128)
    if xi.size == 0:
        raise ContractError("weyl check needs a nonempty sequence")
    if trial.H < 1 or trial.shift < 1:
        raise ContractError(f"weyl check needs H >= 1 and shift >= 1, got {trial.H}, {trial.shift}")
    length = xi.size
    big_h = trial.H
    lam = trial.shift
    corr0 = float(np.vdot(xi, xi).real)
    literal = corr0
    clamped = corr0
    for h in range(1, big_h):
        j = lam * h
        if j >= length:
            break
        corr = complex(np.dot(xi[j:], np.conjugate(xi[:length - j])))
        weight = 1.0 - lam * h / big_h
        literal += 2.0 * weight * corr.real
        clamped += 2.0 * max(0.0, weight) * corr.real
    front = (length + big_h) / big_h
    lhs = abs(complex(xi.sum())) ** 2
    rhs = front * literal
    rhs_clamped = front * clamped
    scale = max(lhs, abs(rhs), 1.0)
    scale_clamped = max(lhs, abs(rhs_clamped), 1.0)
    return WeylCheck(
        lhs=lhs,
        rhs=rhs,
        holds=lhs <= rhs + 1e-9 * scale,
        rhs_clamped=rhs_clamped,
        holds_clamped=lhs <= rhs_clamped + 1e-9 * scale_clamped,
    )


@dataclass(frozen=True)
class WeylSuiteReport:
    """Tally of randomized differencing trials at one shift multiplier."""

    trials: int
    shift: int
    violations: int
    violations_clamped: int
    worst_margin: float
    worst_margin_clamped: float


def weyl_random_suite(trials, seed, shift=1, max_len=200):
    """Run seeded random complex sequences through the differencing check.

    Sequences draw entries uniformly from the complex unit square, lengths
    from [8, max_len], and H from [1, 2*length].  worst_margin is the largest
    lhs - rhs seen (negative when the inequality always held with room).
    """
    rng = random.Random(seed)
    violations = 0
    violations_clamped = 0
    worst = -math.inf
    worst_clamped = -math.inf
    for _ in range(trials):
        length = rng.randrange(8, max_len + 1)
        xi = tuple(
            complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)) for _ in range(length)
        )
        big_h = rng.randrange(1, 2 * length + 1)
        res = weyl_difference_check(
            LemmaTrial(kind="weyl", payload=xi, H=big_h, shift=shift)
        )
        violations += 0 if res.holds else 1
        violations_clamped += 0 if res.holds_clamped else 1
        worst = max(worst, res.lhs - res.rhs)
        worst_clamped = max(worst_clamped, res.lhs - res.rhs_clamped)
    return WeylSuiteReport(
        trials=trials, shift=shift, violations=violations,
        violations_clamped=violations_clamped, worst_margin=worst,
        worst_margin_clamped=worst_clamped,
    )


# --------------------------------------------------------------------------
# Second-derivative van der Corput bound
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class VdcBound:
    """Direct |sum e(f(n))| against alpha*(b-a)*sqrt(lam) + 1/sqrt(lam)."""

    actual: float
    bound: float
    ratio: float


def vdc_second_derivative_bound(trial, samples=257):
    """Check the second-derivative bound after verifying its hypotheses.

    The window lam <= |f''| <= alpha*lam is verified on a uniform sample of
    the interval (with 1e-9 relative slack); a violation -- including the
    degenerate f'' = 0 of a linear phase -- raises HypothesisViolated.
    """
    _require_kind(trial, "vdc")
    f, f2 = trial.payload
    a, b = trial.interval
    if not a < b:
        raise ContractError(f"vdc check needs a < b, got [{a}, {b}]")
    if not trial.lam > 0.0:
        raise HypothesisViolated(f"vdc bound needs lam > 0, got {trial.lam}")
    if not trial.alpha >= 1.0:
        raise HypothesisViolated(f"vdc bound needs alpha >= 1, got {trial.alpha}")
    lam = trial.lam
    top = trial.alpha * lam
    for j in range(samples):
        x = a + (b - a) * j / (samples - 1)
        curv = abs(f2(x))
        if curv < lam * (1.0 - 1e-9) or curv > top * (1.0 + 1e-9):
            raise HypothesisViolated(
                f"second derivative |f''({x:.6g})| = {curv:.6g} leaves "
                f"[lam, alpha*lam] = [{lam:.6g}, {top:.6g}]"
            )
    total = 0j
    for n in range(math.ceil(a), math.floor(b) + 1):
        total += e_unit(f(n))
    actual = abs(total)
    bound = trial.alpha * (b - a) * math.sqrt(lam) + 1.0 / math.sqrt(lam)
    return VdcBound(actual=actual, bound=bound, ratio=actual / bound)


@dataclass(frozen=True)
class VdcSuiteReport:
    """Worst actual/bound ratio over the standard curvature-window suite."""

    count: int
    max_ratio: float


def vdc_standard_suite(count, seed):
    """Phases A x^{3/2} + B x on [N, 2N] with seeded (A, B, N); alpha = sqrt(2).

    |f''| = (3/4) A x^{-1/2} sweeps exactly a sqrt(2)-window over [N, 2N], so
    lam is pinned at the right endpoint (with a hair of slack for the sampled
    endpoints).  Returns the worst actual/bound ratio.
    """
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(count):
        amp = 10.0 ** rng.uniform(-3.0, 0.0)
        slope = rng.uniform(0.0, 1.0)
        n0 = rng.randrange(100, 1000)

        def f(x, _a=amp, _b=slope):
            return _a * x ** 1.5 + _b * x

        def f2(x, _a=amp):
            return 0.75 * _a / math.sqrt(x)

        lam = 0.75 * amp / math.sqrt(2.0 * n0) * (1.0 - 1e-9)
        trial = LemmaTrial(
            kind="vdc", payload=(f, f2), interval=(float(n0), 2.0 * n0),
            lam=lam, alpha=math.sqrt(2.0) * (1.0 + 1e-6),
        )
        worst = max(worst, vdc_second_derivative_bound(trial).ratio)
    return VdcSuiteReport(count=count, max_ratio=worst)


# --------------------------------------------------------------------------
# B-process (stationary phase) transform
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BProcessCheck:
    """Both sides of the transform with the error-term bracket.

    raw_error_term is log(F/N + 2) + N/sqrt(F); error_bound multiplies it by
    the configured constant.  stationary_count is the number of dual points
    f'(x_nu) = nu with nu an integer in [f'(b), f'(a)].
    """

    lhs: complex
    rhs: complex
    error_bound: float
    raw_error_term: float
    stationary_count: int


def b_process_transform(trial, error_constant=10.0, samples=257):
    """Transform sum e(f(n)) into its dual over stationary points and compare.

    Hypotheses verified by sampling: f'' < 0 on [a, b], [a, b] inside
    [N, 2N], and |f''| N^2 / F within a two-decade window of 1.  Each dual
    point x_nu solves the decreasing f'(x) = nu by bisection; the dual sum
    carries the printed phase e(f(x_nu) - nu x_nu - 1/8) and amplitude
    |f''(x_nu)|^{-1/2}.
    """
    _require_kind(trial, "bprocess")
    f, fp, f2 = trial.payload
    a, b = trial.interval
    n_scale = trial.n_scale
    big_f = trial.F
    if not a < b:
        raise ContractError(f"b-process needs a < b, got [{a}, {b}]")
    if not big_f > 0.0:
        raise HypothesisViolated(f"b-process needs F > 0, got {big_f}")
    if a < n_scale * (1.0 - 1e-9) or b > 2.0 * n_scale * (1.0 + 1e-9):
        raise HypothesisViolated(
            f"[a, b] = [{a:.6g}, {b:.6g}] not inside [N, 2N] = [{n_scale:.6g}, {2 * n_scale:.6g}]"
        )
    for j in range(samples):
        x = a + (b - a) * j / (samples - 1)
        curv = f2(x)
        if not curv < 0.0:
            raise HypothesisViolated(f"f''({x:.6g}) = {curv:.6g} is not negative")
        comp = abs(curv) * n_scale * n_scale / big_f
        if not 1e-2 <= comp <= 1e2:
            raise HypothesisViolated(
                f"|f''| N^2 / F = {comp:.6g} at x = {x:.6g} leaves [1e-2, 1e2]"
            )
    alpha = fp(b)
    beta = fp(a)
    if not alpha < beta:
        raise HypothesisViolated(
            f"f' must decrease (f'' < 0): f'(a) = {beta:.6g} <= f'(b) = {alpha:.6g}"
        )
    lhs = 0j
    for n in range(math.ceil(a), math.floor(b) + 1):
        lhs += e_unit(f(n))
    rhs = 0j
    count = 0
    for nu in range(math.ceil(alpha), math.floor(beta) + 1):
        x_lo, x_hi = a, b
        for _ in range(_BISECT_STEPS):
            mid = 0.5 * (x_lo + x_hi)
            if mid == x_lo or mid == x_hi:
                break
            if fp(mid) >= nu:
                x_lo = mid
            else:
                x_hi = mid
        x_nu = 0.5 * (x_lo + x_hi)
        if abs(fp(x_nu) - nu) > 1e-6 * max(1.0, abs(nu)):
            raise RootFindFailure(
                f"bisection left |f'(x) - nu| = {abs(fp(x_nu) - nu):.3g} at nu = {nu}"
            )
        rhs += e_unit(f(x_nu) - nu * x_nu - 0.125) / math.sqrt(abs(f2(x_nu)))
        count += 1
    raw = math.log(big_f / n_scale + 2.0) + n_scale / math.sqrt(big_f)
    return BProcessCheck(
        lhs=lhs, rhs=rhs, error_bound=error_constant * raw,
        raw_error_term=raw, stationary_count=count,
    )


@dataclass(frozen=True)
class BProcessSuiteReport:
    """Single-constant summary of the standard square-root phase suite.

    c_max is the largest |lhs - rhs| / raw_error_term over the suite, i.e.
    the one constant for which every trial satisfies its error bracket.
    """

    count: int
    c_max: float
    max_stationary_count: int


def bprocess_standard_suite(count, seed):
    """Phases A sqrt(x) + B x on [N, 2N] with F = A sqrt(N), seeded (A, B, N).

    F is drawn log-uniformly from [1e2, 1e4] and N uniformly from [1e2, 1e3];
    A = F / sqrt(N) then keeps |f''| N^2 / F inside [1/(4 sqrt(8)), 1/4].
    Returns the single constant c_max with |lhs - rhs| <= c_max * raw for
    every trial.
    """
    rng = random.Random(seed)
    c_max = 0.0
    deepest = 0
    for _ in range(count):
        big_f = 10.0 ** rng.uniform(2.0, 4.0)
        n_scale = rng.uniform(100.0, 1000.0)
        amp = big_f / math.sqrt(n_scale)
        slope = rng.uniform(-2.0, 2.0)
        a = n_scale * (1.0 + 0.05 * rng.random())
        b = 2.0 * n_scale * (1.0 - 0.05 * rng.random())

        def f(x, _a=amp, _b=slope):
            return _a * math.sqrt(x) + _b * x

        def fp(x, _a=amp, _b=slope):
            return 0.5 * _a / math.sqrt(x) + _b

        def f2(x, _a=amp):
            return -0.25 * _a * x ** -1.5

        trial = LemmaTrial(
            kind="bprocess", payload=(f, fp, f2), interval=(a, b),
            F=big_f, n_scale=n_scale,
        )
        res = b_process_transform(trial)
        c_max = max(c_max, abs(res.lhs - res.rhs) / res.raw_error_term)
        deepest = max(deepest, res.stationary_count)
    return BProcessSuiteReport(count=count, c_max=c_max, max_stationary_count=deepest)
