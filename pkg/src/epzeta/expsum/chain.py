"""The transformation chain for the lattice double sum.

Covers: direct evaluation of the annulus sum with its arsinh-type phase,
stationary-point solves for the differenced phases, the closed-form value
G and curvature G'' of the transformed phase, the domain bookkeeping
(a(x), b(x), A_m(n), B_m(n), the n-interval J_m and its dyadic x-splitting),
the exact reorder identity between the two enumeration orders, end-to-end
bound reports, and the differencing-step diagnostic.

Conventions.  The form is Q*(x, y) = a x^2 + b x y + c y^2 with |d| = 4ac - b^2;
the branch variable is z = (b x + 2 c y) / (2c), so the annulus column over a
fixed x splits into the branch z >= 0 (interval I(x)) and z < 0 (its mirror).
All phases are in cycles: e(w) = exp(2 pi i w).
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import (
    CapacityExceeded,
    ContractError,
    DomainError,
    NoStationaryPoint,
    PrecisionExceeded,
    SingularPoint,
)
from ..qform import enumerate_annulus
from ..special import e_unit, phi, phi_derivatives

__all__ = [
    "BoundReport",
    "DomainSlice",
    "DomainSplit",
    "RawSumResult",
    "ReorderCheck",
    "StationaryData",
    "WeylStepReport",
    "WeylStepRow",
    "bound_report",
    "closed_g",
    "domain_split",
    "g_second_derivative",
    "lower_edge",
    "raw_double_sum",
    "reorder_identity_check",
    "stationary_solve",
    "upper_edge",
    "weyl_step_diagnostic",
]

# Direct-evaluation budgets: point count keeps a raw sum in the seconds range,
# and the cycle budget keeps the mod-1 reduction error of the oscillatory
# phase below ~2e-8 cycles (double rounding of t/pi * phi).
ANNULUS_POINT_BUDGET = 2_000_000
PHASE_CYCLE_BUDGET = 1.0e8

_BISECT_STEPS = 100


# --------------------------------------------------------------------------
# Phase and derivative building blocks
# --------------------------------------------------------------------------


def _osc_phase(sc, q):
    """(t/pi) * phi(pi q / (2 h k delta0 t)) -- the slowly varying phase part."""
    return sc.t / math.pi * phi(math.pi * q / (sc.phase_scale() * sc.t))


def _sqrt_scale(sc):
    """sqrt(2 pi h k delta0), the recurring normalization of the linearized phase."""
    return math.sqrt(math.pi * sc.phase_scale())


def _branch_interval(sc, x):
    """The y-interval of the z >= 0 branch of N <= Q*(x, y) <= N', or None.

    Completing the square gives Q* = c z^2 + |d| x^2 / (4c) with
    z = y + b x / (2c); the branch interval is z in [z_lo, z_hi] mapped back
    to y.  Returns None when the column misses the annulus entirely.
    """
    qs = sc.qstar
    c = float(qs.c)
    absd = float(qs.delta)
    ridge = absd * x * x / (4.0 * c * c)
    hi = sc.Nprime / c - ridge
    if hi < 0.0:
        return None
    z_hi = math.sqrt(hi)
    z_lo = math.sqrt(max(0.0, sc.N / c - ridge))
    shift = qs.b * x / (2.0 * c)
    return (z_lo - shift, z_hi - shift)


def _f_linearized(sc, x, y):
    """F_x(y) = (b x + 2 c y) * (r + sqrt(t) / sqrt(2 pi h k delta0 Q*))."""
    qs = sc.qstar
    q = qs.a * x * x + qs.b * x * y + qs.c * y * y
    return (qs.b * x + 2.0 * qs.c * y) * (
        sc.r + math.sqrt(sc.t) / (_sqrt_scale(sc) * math.sqrt(q))
    )


def _f_linearized_prime(sc, x, y):
    """F'_x(y) = 2 c r + sqrt(t) |d| x^2 / (2 sqrt(2 pi h k delta0) Q*^{3/2})."""
    qs = sc.qstar
    q = qs.a * x * x + qs.b * x * y + qs.c * y * y
    return 2.0 * qs.c * sc.r + math.sqrt(sc.t) * qs.delta * x * x / (
        2.0 * _sqrt_scale(sc) * q ** 1.5
    )


def _f_linearized_second(sc, x, y):
    """F''_x(y) = -3 sqrt(t) |d| x^2 (b x + 2 c y) / (4 sqrt(2 pi h k delta0) Q*^{5/2})."""
    qs = sc.qstar
    q = qs.a * x * x + qs.b * x * y + qs.c * y * y
    return -3.0 * math.sqrt(sc.t) * qs.delta * x * x * (qs.b * x + 2.0 * qs.c * y) / (
        4.0 * _sqrt_scale(sc) * q ** 2.5
    )


def lower_edge(sc, x):
    """a(x): the lower endpoint of the F'-range over the branch interval.

    Equals F'_x at the outer annulus edge Q* = N':
    a(x) = 2 c r + sqrt(t) |d| x^2 / (2 sqrt(2 pi h k delta0) N'^{3/2}).
    """
    qs = sc.qstar
    return 2.0 * qs.c * sc.r + math.sqrt(sc.t) * qs.delta * x * x / (
        2.0 * _sqrt_scale(sc) * sc.Nprime ** 1.5
    )


def upper_edge(sc, x):
    """b(x): the upper endpoint of the F'-range over the branch interval.

    The inner edge of the column is Q* = N when the column crosses the inner
    circle and Q* = |d| x^2 / (4c) (the ridge) otherwise; the min picks
    whichever applies:
    b(x) = 2 c r + min( sqrt(t) |d| x^2 / (2 sqrt(2 pi h k delta0) N^{3/2}),
                        (4c)^{3/2} sqrt(t) / (2 sqrt(2 pi |d| h k delta0) x) ).
    """
    qs = sc.qstar
    base = 2.0 * qs.c * sc.r
    if x == 0.0:
        return base
    inner = math.sqrt(sc.t) * qs.delta * x * x / (2.0 * _sqrt_scale(sc) * sc.N ** 1.5)
    ridge = (4.0 * qs.c) ** 1.5 * math.sqrt(sc.t) / (
        2.0 * _sqrt_scale(sc) * math.sqrt(qs.delta) * abs(x)
    )
    return base + min(inner, ridge)


def _x_domain_end(sc):
    """The right endpoint 2 sqrt(c N') / sqrt(|d|) of the x-domain."""
    qs = sc.qstar
    return 2.0 * math.sqrt(qs.c * sc.Nprime) / math.sqrt(qs.delta)


# --------------------------------------------------------------------------
# Direct double sum
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RawSumResult:
    """Direct annulus sum; total is the sum of the four quadrant partials.

    Quadrant order: (x >= 0, z >= 0), (x >= 0, z < 0), (x < 0, z >= 0),
    (x < 0, z < 0), where z carries the sign of b x + 2 c y.
    """

    total: complex
    quadrants: tuple
    point_count: int


def raw_double_sum(sc):
    """Evaluate sum over N <= Q*(x,y) <= N' of e(Q* r + (t/pi) phi(pi Q*/(2hk delta0 t))).

    The rational part Q* r of the phase is reduced mod 1 in exact integer
    arithmetic (Q* is an integer, r an exact Fraction); only the slowly
    varying arsinh part is floating point, so the evaluation is exact to
    phase-reduction accuracy.  Every lattice point lands in exactly one of
    the four quadrants recorded in the result.
    """
    qs = sc.qstar
    est = 2.0 * math.pi * (sc.Nprime - sc.N + 2.0 * math.sqrt(sc.Nprime) + 4.0) / math.sqrt(qs.delta)
    if est > ANNULUS_POINT_BUDGET:
        raise CapacityExceeded(
            f"annulus [{sc.N:g}, {sc.Nprime:g}] holds ~{est:.3g} points "
            f"(budget {ANNULUS_POINT_BUDGET:.0e})"
        )
    if _osc_phase(sc, sc.Nprime) > PHASE_CYCLE_BUDGET:
        raise PrecisionExceeded(
            f"oscillatory phase reaches {_osc_phase(sc, sc.Nprime):.3g} cycles "
            f"(budget {PHASE_CYCLE_BUDGET:.0e}); mod-1 reduction would lose accuracy"
        )
    r_frac = sc.offset_fraction()
    num, den = r_frac.numerator, r_frac.denominator
    points = enumerate_annulus(qs, sc.N, sc.Nprime)
    phase_for = {}
    quadrants = [0j, 0j, 0j, 0j]
    for p in points:
        ph = phase_for.get(p.value)
        if ph is None:
            rational = (p.value * num) % den / den
            ph = e_unit(rational + _osc_phase(sc, p.value))
            phase_for[p.value] = ph
        branch = qs.b * p.x + 2 * qs.c * p.y
        idx = (0 if p.x >= 0 else 2) + (0 if branch >= 0 else 1)
        quadrants[idx] += ph
    total = quadrants[0] + quadrants[1] + quadrants[2] + quadrants[3]
    return RawSumResult(total=total, quadrants=tuple(quadrants), point_count=len(points))


# --------------------------------------------------------------------------
# Stationary-point machinery
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class StationaryData:
    """Solution of 2m F'_x(y) = n on the z >= 0 branch, with derived values.

    fxx is F''_x at the stationary point (negative); g_value is the
    transformed phase G_{m,n}(x) (closed form, cross-checked against the
    direct value 2m F_x(y*) - n y*); g_second is its curvature G''_{m,n}(x).
    """

    m: int
    n: int
    x: float
    y_star: float
    fxx: float
    g_value: float
    g_second: float


def _g_pieces(sc, m, n, x):
    """The closed-form ingredients (linear slope, P, Q0, bracket) of G_{m,n}.

    G_{m,n}(x) = (b n / 2c) x + (Q0 - P x^{2/3})^{3/2} / (2c) with
    P = (n - 4 c m r)^{2/3} |d|^{1/3} and
    Q0 = 4 c m^{2/3} t^{1/3} / (2 pi h k delta0)^{1/3}.
    """
    qs = sc.qstar
    lin = n - 4.0 * qs.c * m * sc.r
    if lin <= 0.0:
        raise NoStationaryPoint(
            f"n = {n} is at or below the lower edge 4 c m r = {4.0 * qs.c * m * sc.r:.9g}"
        )
    p_coef = lin ** (2.0 / 3.0) * qs.delta ** (1.0 / 3.0)
    q_coef = 4.0 * qs.c * m ** (2.0 / 3.0) * sc.t ** (1.0 / 3.0) / (
        math.pi * sc.phase_scale()
    ) ** (1.0 / 3.0)
    bracket = q_coef - p_coef * x ** (2.0 / 3.0)
    return lin, p_coef, q_coef, bracket


def closed_g(sc, m, n, x):
    """Closed-form G_{m,n}(x), valid up to the edge where the bracket vanishes."""
    qs = sc.qstar
    _, _, _, bracket = _g_pieces(sc, m, n, x)
    if bracket < 0.0:
        raise NoStationaryPoint(
            f"x = {x:.9g} lies beyond the stationary edge for (m, n) = ({m}, {n})"
        )
    return qs.b * n / (2.0 * qs.c) * x + bracket ** 1.5 / (2.0 * qs.c)


def stationary_solve(sc, m, n, x):
    """Solve 2m F'_x(y) = n by bisection on the decreasing F'_x.

    Requires x > 0 and n inside [2m a(x), 2m b(x)] (otherwise
    NoStationaryPoint).  The closed-form G is asserted against the direct
    value 2m F_x(y*) - n y* to 1e-9 relative; the stationarity makes the
    direct value second-order insensitive to the bisection residual.
    """
    if m < 1:
        raise ContractError(f"stationary solve needs m >= 1, got {m}")
    if not x > 0.0:
        raise DomainError(f"stationary solve needs x > 0, got {x}")
    n_lo = 2.0 * m * lower_edge(sc, x)
    n_hi = 2.0 * m * upper_edge(sc, x)
    if not (n_lo <= n <= n_hi):
        raise NoStationaryPoint(
            f"n = {n} outside [2m a(x), 2m b(x)] = [{n_lo:.9g}, {n_hi:.9g}] at x = {x:.9g}"
        )
    span = _branch_interval(sc, x)
    if span is None:
        raise NoStationaryPoint(f"x = {x:.9g} misses the annulus entirely")
    y_lo, y_hi = span
    target = n / (2.0 * m)
    # F' decreases from b(x) at y_lo to a(x) at y_hi; keep the invariant
    # F'(y_lo) >= target >= F'(y_hi).
    for _ in range(_BISECT_STEPS):
        mid = 0.5 * (y_lo + y_hi)
        if mid == y_lo or mid == y_hi:
            break
        if _f_linearized_prime(sc, x, mid) >= target:
            y_lo = mid
        else:
            y_hi = mid
    y_star = 0.5 * (y_lo + y_hi)
    fxx = _f_linearized_second(sc, x, y_star)
    g_closed = closed_g(sc, m, n, x)
    g_direct = 2.0 * m * _f_linearized(sc, x, y_star) - n * y_star
    if abs(g_closed - g_direct) > 1e-9 * max(1.0, abs(g_closed)):
        raise ContractError(
            f"stationary value mismatch: closed form {g_closed!r} vs direct {g_direct!r} "
            f"at (m, n, x) = ({m}, {n}, {x:.9g})"
        )
    g2 = g_second_derivative(sc, m, n, x)
    return StationaryData(m=m, n=n, x=float(x), y_star=y_star, fxx=fxx,
                          g_value=g_closed, g_second=g2)


# The bracket Q0 - P x^{2/3} vanishing marks the stationary edge; below this
# fraction of Q0 the curvature closed form is declared singular.
SINGULAR_BRACKET_FRACTION = 1.0e-6


def g_second_derivative(sc, m, n, x, fd_check=True):
    """Curvature G''_{m,n}(x) = P Q0 / (6c) * x^{-4/3} / sqrt(Q0 - P x^{2/3}).

    Differentiating the closed-form G twice collapses to the product form
    above (the printed expanded form rearranges to it on the admissible
    range).  With fd_check the value is verified against a fourth-order
    central second difference of the bracket part of G -- the linear term
    has zero curvature and is dropped before differencing, which removes
    the only source of cancellation noise -- to 1e-6 relative.

    Raises SingularPoint when the bracket is <= SINGULAR_BRACKET_FRACTION*Q0
    (the collapsing edge of the dyadic x-splitting).
    """
    if m < 1:
        raise ContractError(f"curvature needs m >= 1, got {m}")
    if not x > 0.0:
        raise DomainError(f"curvature needs x > 0, got {x}")
    qs = sc.qstar
    _, p_coef, q_coef, bracket = _g_pieces(sc, m, n, x)
    if bracket <= SINGULAR_BRACKET_FRACTION * q_coef:
        raise SingularPoint(
            f"bracket Q0 - P x^(2/3) = {bracket:.6g} vanishes within tolerance "
            f"({SINGULAR_BRACKET_FRACTION:g} * Q0 = {SINGULAR_BRACKET_FRACTION * q_coef:.6g}) "
            f"at x = {x:.9g}"
        )
    g2 = p_coef * q_coef / (6.0 * qs.c) * x ** (-4.0 / 3.0) / math.sqrt(bracket)
    if fd_check:
        x_edge = (q_coef / p_coef) ** 1.5

        def hump(u):
            return (q_coef - p_coef * u ** (2.0 / 3.0)) ** 1.5 / (2.0 * qs.c)

        step = min(3.0e-3 * x, 9.0e-4 * (x_edge - x))
        fd = (
            -hump(x + 2.0 * step)
            + 16.0 * hump(x + step)
            - 30.0 * hump(x)
            + 16.0 * hump(x - step)
            - hump(x - 2.0 * step)
        ) / (12.0 * step * step)
        if abs(fd - g2) > 1e-6 * max(abs(g2), 1e-300):
            raise ContractError(
                f"curvature mismatch: closed form {g2!r} vs finite difference {fd!r} "
                f"at (m, n, x) = ({m}, {n}, {x:.9g})"
            )
    return g2


# --------------------------------------------------------------------------
# Domain bookkeeping
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DomainSlice:
    """One dyadic level: the x-interval (X0 - 2 delta, X0 - delta] clipped to [A, B].

    in_window records whether delta sits inside the nominal range
    [1, sqrt(N)]; levels beyond it only appear when needed to reach A.
    """

    delta: float
    interval: tuple
    in_window: bool


@dataclass(frozen=True)
class DomainSplit:
    """Domain data for one (m, n): edges, the n-interval, and the x-splitting.

    a_x and b_x are the edge callables x -> a(x), b(x); A and B are the
    reordered x-range endpoints A_m(n), B_m(n); Jm, Jm_prime, Jm_doubleprime
    partition the n-interval; head is the unit slice (X0 - 1, X0] clipped to
    [A, B]; delta_levels are the dyadic slices marching from the singular
    edge X0 down past A; empty flags an empty [A, B] (valid, not an error).
    """

    a_x: object
    b_x: object
    A: float
    B: float
    Jm: tuple
    Jm_prime: tuple
    Jm_doubleprime: tuple
    head: tuple
    delta_levels: tuple
    x_singular: float
    jm_length: float
    jm_ratio: float
    empty: bool


def _clip(lo, hi, a, b):
    """Intersect (lo, hi] with [a, b]; None when empty."""
    left = max(lo, a)
    right = min(hi, b)
    if left >= right:
        return None
    return (left, right)


def domain_split(sc, m, n):
    """Compute the reordered-sum domain data for one (m, n).

    A_m(n) and B_m(n) are the closed-form x-range endpoints; J_m the
    n-interval with its near/far split J'_m, J''_m; and the x-range is
    covered by the head slice (X0 - 1, X0] plus dyadic slices
    (X0 - 2 delta, X0 - delta] doubling delta from 1 until they pass A.
    The ratio |J_m| / (m sqrt(K) / sqrt(N)) is recorded for the two-sided
    comparability checks.
    """
    if m < 1:
        raise ContractError(f"domain split needs m >= 1, got {m}")
    qs = sc.qstar
    c = float(qs.c)
    absd = float(qs.delta)
    rt = math.sqrt(sc.t)
    ss = _sqrt_scale(sc)
    jm_lo = 4.0 * c * m * sc.r
    jm_len = 2.0 * c * m * rt * sc.Nprime / (ss * sc.N ** 1.5)
    jm = (jm_lo, jm_lo + jm_len)
    jm_prime = (jm_lo, jm_lo + c * m * rt / (ss * math.sqrt(sc.Nprime)))
    jm_doubleprime = (jm_prime[1], jm[1])
    jm_ratio = jm_len / (m * math.sqrt(sc.K) / math.sqrt(sc.N))

    def a_x(x, _sc=sc):
        return lower_edge(_sc, x)

    def b_x(x, _sc=sc):
        return upper_edge(_sc, x)

    lin = n - jm_lo
    if lin <= 0.0:
        return DomainSplit(
            a_x=a_x, b_x=b_x, A=math.nan, B=math.nan, Jm=jm, Jm_prime=jm_prime,
            Jm_doubleprime=jm_doubleprime, head=None, delta_levels=(),
            x_singular=math.nan, jm_length=jm_len, jm_ratio=jm_ratio, empty=True,
        )
    quarter = (math.pi * sc.phase_scale()) ** 0.25
    a_end = math.sqrt(lin) * quarter * sc.N ** 0.75 / (math.sqrt(m * absd) * sc.t ** 0.25)
    x_sing = (4.0 * c) ** 1.5 * m * rt / (math.sqrt(2.0 * math.pi * absd * sc.h * sc.k * sc.delta0) * lin)
    b_end = min(
        _x_domain_end(sc),
        math.sqrt(lin) * quarter * sc.Nprime ** 0.75 / (math.sqrt(m * absd) * sc.t ** 0.25),
        x_sing,
    )
    empty = not a_end <= b_end
    head = None if empty else _clip(x_sing - 1.0, x_sing, a_end, b_end)
    levels = []
    if not empty:
        delta = 1.0
        root_n = math.sqrt(sc.N)
        for _ in range(120):
            seg = _clip(x_sing - 2.0 * delta, x_sing - delta, a_end, b_end)
            levels.append(DomainSlice(delta=delta, interval=seg, in_window=delta <= root_n))
            if x_sing - 2.0 * delta <= a_end:
                break
            delta *= 2.0
    return DomainSplit(
        a_x=a_x, b_x=b_x, A=a_end, B=b_end, Jm=jm, Jm_prime=jm_prime,
        Jm_doubleprime=jm_doubleprime, head=head, delta_levels=tuple(levels),
        x_singular=x_sing, jm_length=jm_len, jm_ratio=jm_ratio, empty=empty,
    )


# --------------------------------------------------------------------------
# Reorder identity
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ReorderCheck:
    """Both enumeration orders of the transformed sum and their agreement."""

    lhs: complex
    rhs: complex
    equal: bool
    pair_count: int


def _admissible(sc, m, x, n):
    """The primal membership predicate 2m a(x) <= n <= 2m b(x)."""
    return 2.0 * m * lower_edge(sc, x) <= n <= 2.0 * m * upper_edge(sc, x)


def reorder_identity_check(sc, m):
    """Verify the x-first and n-first enumerations of the transformed sum agree.

    Both sides sum w(x, n) e(G_{m,n}(x)) with w = 1 / sqrt(2m |F''_x(y*)|)
    over integer pairs, and membership on BOTH sides is the primal predicate
    2m a(x) <= n <= 2m b(x) -- so the identity is an exact finite reordering
    and the two float totals may differ only by summation-order roundoff.
    The integer ranges scanned are supersets: x in [1, x_end + 1] and n in
    the widened J_m; the predicate does the real filtering.  The column
    x = 0 is degenerate (a(0) = b(0), so the predicate fires only on the
    measure-zero event n = 4 c m r, where the stationary weight diverges)
    and both enumerations skip it.
    """
    if m < 1:
        raise ContractError(f"reorder check needs m >= 1, got {m}")
    x_top = int(math.floor(_x_domain_end(sc))) + 1
    jm_lo = 4.0 * sc.qstar.c * m * sc.r
    jm_hi = jm_lo + 2.0 * sc.qstar.c * m * math.sqrt(sc.t) * sc.Nprime / (
        _sqrt_scale(sc) * sc.N ** 1.5
    )
    n_lo = int(math.ceil(jm_lo)) - 1
    n_hi = int(math.floor(jm_hi)) + 1
    terms = {}

    def term(x, n):
        got = terms.get((x, n))
        if got is None:
            sd = stationary_solve(sc, m, n, float(x))
            got = e_unit(sd.g_value) / math.sqrt(2.0 * m * abs(sd.fxx))
            terms[(x, n)] = got
        return got

    lhs = 0j
    lhs_pairs = []
    for x in range(1, x_top + 1):
        for n in range(n_lo, n_hi + 1):
            if _admissible(sc, m, float(x), n):
                lhs += term(x, n)
                lhs_pairs.append((x, n))
    rhs = 0j
    rhs_pairs = []
    for n in range(n_lo, n_hi + 1):
        for x in range(1, x_top + 1):
            if _admissible(sc, m, float(x), n):
                rhs += term(x, n)
                rhs_pairs.append((x, n))
    if set(lhs_pairs) != set(rhs_pairs):
        raise ContractError("reorder enumerations visited different (x, n) sets")
    scale = max(abs(lhs), abs(rhs), 1.0)
    return ReorderCheck(
        lhs=lhs, rhs=rhs, equal=abs(lhs - rhs) <= 1e-10 * scale, pair_count=len(lhs_pairs)
    )


# --------------------------------------------------------------------------
# Bound report
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    """Direct |S| against the two bound laws, with the block-sum intermediates.

    normalized is K^{1/4} N^{-1/4} T^{-1/2} |S|; the bound laws are
    trivial = K^{11/12} T^{-1/2} + K^{25/12} T^{-3/2} and
    improved = K^{7/8} T^{-1/2} log T + K^{17/8} T^{-3/2}; block_sum_* are
    the six-term differencing bound M N^{3/2} + N^2/M + M N^{5/2} K^{3/2}/T^2
    + M^3 N^{1/2} K^{1/2} + N^2/(M^{1/2} K^{1/4}) + M N K^{1/2} log T at the
    two block lengths M; the threshold exponents are the exact Fractions
    (6/11)(11/12) - 1/2 and (4/7)(7/8) - 1/2 (both zero: at the threshold
    K-laws the normalized bounds carry no power of T).
    """

    raw_abs: float
    normalized: float
    trivial_bound: float
    improved_bound: float
    ratio_trivial: float
    ratio_improved: float
    m_trivial: int
    m_improved: int
    block_sum_trivial: float
    block_sum_improved: float
    threshold_trivial_exponent: Fraction
    threshold_improved_exponent: Fraction
    point_count: int

    CSV_HEADER = (
        "raw_abs,normalized,trivial_bound,improved_bound,ratio_trivial,"
        "ratio_improved,m_trivial,m_improved,block_sum_trivial,"
        "block_sum_improved,point_count"
    )

    def csv_row(self):
        """One flat CSV row matching CSV_HEADER (shortest-round-trip floats)."""
        return ",".join([
            repr(self.raw_abs), repr(self.normalized), repr(self.trivial_bound),
            repr(self.improved_bound), repr(self.ratio_trivial),
            repr(self.ratio_improved), str(self.m_trivial), str(self.m_improved),
            repr(self.block_sum_trivial), repr(self.block_sum_improved),
            str(self.point_count),
        ])


def _block_sum_bound(m_len, n, k, t_big):
    """The six-term differencing bound at block length M = m_len."""
    log_t = math.log(t_big)
    return (
        m_len * n ** 1.5
        + n * n / m_len
        + m_len * n ** 2.5 * k ** 1.5 / (t_big * t_big)
        + m_len ** 3 * math.sqrt(n) * math.sqrt(k)
        + n * n / (math.sqrt(m_len) * k ** 0.25)
        + m_len * n * math.sqrt(k) * log_t
    )


def bound_report(sc):
    """Evaluate the raw double sum and compare it against the bound laws."""
    raw = raw_double_sum(sc)
    raw_abs = abs(raw.total)
    n, k, t_big = sc.N, sc.K, sc.T
    normalized = k ** 0.25 * n ** -0.25 * t_big ** -0.5 * raw_abs
    log_t = math.log(t_big)
    trivial = k ** (11.0 / 12.0) / math.sqrt(t_big) + k ** (25.0 / 12.0) * t_big ** -1.5
    improved = k ** 0.875 / math.sqrt(t_big) * log_t + k ** 2.125 * t_big ** -1.5
    m_triv = max(1, int(n ** (1.0 / 3.0) * k ** (-1.0 / 6.0)))
    m_impr = max(1, int(math.sqrt(n) * k ** -0.25))
    return BoundReport(
        raw_abs=raw_abs,
        normalized=normalized,
        trivial_bound=trivial,
        improved_bound=improved,
        ratio_trivial=normalized / trivial,
        ratio_improved=normalized / improved,
        m_trivial=m_triv,
        m_improved=m_impr,
        block_sum_trivial=_block_sum_bound(m_triv, n, k, t_big),
        block_sum_improved=_block_sum_bound(m_impr, n, k, t_big),
        threshold_trivial_exponent=Fraction(6, 11) * Fraction(11, 12) - Fraction(1, 2),
        threshold_improved_exponent=Fraction(4, 7) * Fraction(7, 8) - Fraction(1, 2),
        point_count=raw.point_count,
    )


# --------------------------------------------------------------------------
# Differencing-step diagnostic
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class WeylStepRow:
    """Worst discrepancy between the differenced and linearized column sums."""

    m: int
    max_abs_discrepancy: float
    remainder_bound: float
    ratio: float


@dataclass(frozen=True)
class WeylStepReport:
    """Per-shift discrepancy rows plus the third-derivative comparability.

    g3_max_ratio is max |g'''_x(y)| * N * T / sqrt(K) over the sampled grid;
    interval_check records the degenerate shift m = 0, where the differenced
    sum must equal the column's integer count exactly.
    """

    rows: tuple
    g3_max_ratio: float
    interval_check: bool


def _column_phase(sc, x, y):
    """f_x(y) = Q*(x,y) r + (t/pi) phi(pi Q*(x,y) / (2 h k delta0 t)), in cycles."""
    qs = sc.qstar
    q = qs.a * x * x + qs.b * x * y + qs.c * y * y
    return q * sc.r + _osc_phase(sc, q)


def _g3_of(sc, x, y):
    """Third y-derivative of the slow phase g_x(y) = phi(pi Q* / (2 h k delta0 t)).

    Chain rule with u = c0 Q*, u' = c0 (b x + 2 c y), u'' = 2 c c0, u''' = 0:
    g''' = phi'''(u) u'^3 + 3 phi''(u) u' u''.
    """
    qs = sc.qstar
    c0 = math.pi / (sc.phase_scale() * sc.t)
    q = qs.a * x * x + qs.b * x * y + qs.c * y * y
    u = c0 * q
    u1 = c0 * (qs.b * x + 2.0 * qs.c * y)
    u2 = 2.0 * qs.c * c0
    return phi_derivatives(u, 3) * u1 ** 3 + 3.0 * phi_derivatives(u, 2) * u1 * u2


def weyl_step_diagnostic(sc, M):
    """Compare differenced column sums with their linearized form for shifts <= M.

    For each shift m and each integer column x in the x-domain, sums
    e(f_x(y+m) - f_x(y-m)) and e(2m F_x(y)) over the integers y whose
    shifted pair stays inside the branch interval, and reports the worst
    absolute discrepancy against the remainder law
    m N^{3/2} K^{3/2} / T^2 + m^3 K^{1/2} / N^{1/2}.  Also samples the
    third derivative of the slow phase and records
    max |g'''| N T / sqrt(K).
    """
    if M < 1:
        raise ContractError(f"diagnostic needs M >= 1, got {M}")
    x_top = int(math.floor(_x_domain_end(sc)))
    columns = []
    for x in range(0, x_top + 1):
        span = _branch_interval(sc, float(x))
        if span is None:
            continue
        y_lo, y_hi = int(math.ceil(span[0])), int(math.floor(span[1]))
        if y_lo <= y_hi:
            columns.append((x, y_lo, y_hi))
    interval_check = all(
        abs(sum(
            e_unit(_column_phase(sc, float(x), float(y)) - _column_phase(sc, float(x), float(y)))
            for y in range(y_lo, y_hi + 1)
        ) - (y_hi - y_lo + 1)) == 0.0
        for x, y_lo, y_hi in columns
    )
    rows = []
    for m in range(1, M + 1):
        worst = 0.0
        for x, y_lo, y_hi in columns:
            direct = 0j
            linear = 0j
            for y in range(y_lo + m, y_hi - m + 1):
                direct += e_unit(
                    _column_phase(sc, float(x), float(y + m))
                    - _column_phase(sc, float(x), float(y - m))
                )
                linear += e_unit(2.0 * m * _f_linearized(sc, float(x), float(y)))
            worst = max(worst, abs(direct - linear))
        remainder = (
            m * sc.N ** 1.5 * sc.K ** 1.5 / (sc.T * sc.T)
            + m ** 3 * math.sqrt(sc.K) / math.sqrt(sc.N)
        )
        rows.append(WeylStepRow(
            m=m, max_abs_discrepancy=worst, remainder_bound=remainder,
            ratio=worst / remainder,
        ))
    g3_worst = 0.0
    scale = sc.N * sc.T / math.sqrt(sc.K)
    for x, y_lo, y_hi in columns:
        if x == 0:
            continue
        steps = 32
        for j in range(steps + 1):
            y = y_lo + (y_hi - y_lo) * j / steps
            g3_worst = max(g3_worst, abs(_g3_of(sc, float(x), y)) * scale)
    return WeylStepReport(rows=tuple(rows), g3_max_ratio=g3_worst,
                          interval_check=interval_check)


# --------------------------------------------------------------------------
# Comparability windows
# --------------------------------------------------------------------------

WINDOW_LO = 1.0 / 50.0
WINDOW_HI = 50.0

_X_FRACTIONS = (0.1, 0.3, 0.5, 0.7, 0.9)


@dataclass(frozen=True)
class WindowStat:
    """Observed range of one order-of-magnitude ratio family.

    two_sided distinguishes ratios claimed comparable from above and
    below (checked against [WINDOW_LO, WINDOW_HI]) from length ratios
    only bounded above (checked against WINDOW_HI alone).
    """

    label: str
    lo: float
    hi: float
    count: int
    two_sided: bool

    def within(self, lo_limit=WINDOW_LO, hi_limit=WINDOW_HI):
        if self.count == 0:
            return False
        if self.two_sided and self.lo < lo_limit:
            return False
        return self.hi <= hi_limit


@dataclass(frozen=True)
class WindowReport:
    stats: tuple
    lo_limit: float
    hi_limit: float
    all_within: bool
    m_max: int


def _integers_in(lo, hi):
    """Integers n with lo < n <= hi."""
    first = int(math.floor(lo)) + 1
    last = int(math.floor(hi))
    return range(first, last + 1)


def _fraction_points(lo, hi):
    return [lo + (hi - lo) * f for f in _X_FRACTIONS]


def asymptotic_window_report(sc, m_max=None, block_lengths=(1, 2)):
    """Two-sided comparability constants for the order-of-magnitude laws.

    Each ratio family is sampled on the domain where the transformation
    chain uses the corresponding estimate:

    * ``fxx * N / sqrt(K)``: at the stationary points of the integer
      terms (m, n, x) of the reordered sum, for the block lengths the
      bound report actually differences over (weights 1/sqrt(2m|fxx|)).
      The raw second derivative vanishes like x^2 toward the annulus
      edge, so columns outside the reordered domain make no claim.
    * ``g2 * N / (m sqrt(K))``: for n in the near subinterval of the
      n-range, x swept across [A, B] (all of it far from the singular
      edge there).
    * ``g2 * sqrt(delta) * N^(3/4) / (m sqrt(K))``: for n in the far
      subinterval, x swept through each in-window dyadic slice.
    * ``x / sqrt(N)``: for n in the far subinterval, x swept across
      [A, B].
    * ``|J_m| / (m sqrt(K) / sqrt(N))``: per m; bounded above only.

    m_max defaults to the smallest m giving the near subinterval room
    for two integers (capped at 96) so every family collects samples.
    Samples losing the stationary point or hitting the singular edge to
    rounding are skipped.
    """
    c = float(sc.qstar.c)
    ss = _sqrt_scale(sc)
    near_unit = c * math.sqrt(sc.t) / (ss * math.sqrt(sc.Nprime))
    if m_max is None:
        m_max = min(96, max(8, int(math.ceil(2.0 / near_unit))))
    root_k = math.sqrt(sc.K)
    root_n = math.sqrt(sc.N)

    fxx_vals = []
    g2_near_vals = []
    g2_slice_vals = []
    x_far_vals = []
    jm_vals = []

    def g2_at(m, n, x):
        try:
            return g_second_derivative(sc, m, n, x, fd_check=False)
        except (SingularPoint, NoStationaryPoint):
            return None

    for m in range(1, m_max + 1):
        split_any = domain_split(sc, m, int(math.floor(4.0 * c * m * sc.r)) + 1)
        jm_vals.append(split_any.jm_ratio)
        for n in _integers_in(*split_any.Jm):
            split = domain_split(sc, m, n)
            if split.empty:
                continue
            near = n <= split.Jm_prime[1]
            if near:
                for x in _fraction_points(split.A, split.B):
                    g2 = g2_at(m, n, x)
                    if g2 is not None:
                        g2_near_vals.append(g2 * sc.N / (m * root_k))
            else:
                for x in _fraction_points(split.A, split.B):
                    x_far_vals.append(x / root_n)
                for level in split.delta_levels:
                    if not level.in_window or level.interval is None:
                        continue
                    for x in _fraction_points(*level.interval):
                        g2 = g2_at(m, n, x)
                        if g2 is not None:
                            g2_slice_vals.append(
                                g2 * math.sqrt(level.delta) * sc.N ** 0.75
                                / (m * root_k)
                            )

    for m in block_lengths:
        split_any = domain_split(sc, m, int(math.floor(4.0 * c * m * sc.r)) + 1)
        for n in _integers_in(*split_any.Jm):
            split = domain_split(sc, m, n)
            if split.empty:
                continue
            for x in range(int(math.ceil(split.A)), int(math.floor(split.B)) + 1):
                try:
                    st = stationary_solve(sc, m, n, float(x))
                except NoStationaryPoint:
                    continue
                fxx_vals.append(abs(st.fxx) * sc.N / root_k)

    def stat(label, vals, two_sided=True):
        if not vals:
            return WindowStat(label=label, lo=math.nan, hi=math.nan,
                              count=0, two_sided=two_sided)
        return WindowStat(label=label, lo=min(vals), hi=max(vals),
                          count=len(vals), two_sided=two_sided)

    stats = (
        stat("fxx*N/sqrt(K)", fxx_vals),
        stat("g2*N/(m*sqrt(K)) on near n", g2_near_vals),
        stat("g2*sqrt(delta)*N^0.75/(m*sqrt(K)) on slices", g2_slice_vals),
        stat("x/sqrt(N) on far n", x_far_vals),
        stat("|Jm|/(m*sqrt(K)/sqrt(N))", jm_vals, two_sided=False),
    )
    return WindowReport(
        stats=stats,
        lo_limit=WINDOW_LO,
        hi_limit=WINDOW_HI,
        all_within=all(s.within() for s in stats),
        m_max=m_max,
    )
