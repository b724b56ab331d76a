"""Integer binary quadratic forms and lattice-point counting.

A positive definite form Q(x, y) = a x^2 + b x y + c y^2 with integer
coefficients has discriminant d = b^2 - 4ac < 0; we write delta = |d| = -d.
The central quantity is the representation count

    r_Q(n) = #{(x, y) in Z^2 \\ {(0,0)} : Q(x, y) = n},

computed here in exact integer arithmetic.  All boundary decisions (annulus
membership, ellipse projections) are made on integers, never on floats.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityExceeded, DomainError, NotPositiveDefinite

# Hard cap on lattice sweep sizes.  A sweep touches ~ pi * n_hi / sqrt(delta)
# points; 2e8 keeps worst-case memory well under a gigabyte.
SWEEP_POINT_BUDGET = 200_000_000


@dataclass(frozen=True)
class QuadraticForm:
    """Positive definite integer form a x^2 + b x y + c y^2."""

    a: int
    b: int
    c: int
    delta: int  # |4ac - b^2| > 0
    d: int      # b^2 - 4ac < 0

    def __call__(self, x, y):
        """Exact integer value Q(x, y)."""
        return self.a * x * x + self.b * x * y + self.c * y * y

    def adjoint(self):
        """The form (c, -b, a); its r counts coincide with this form's."""
        return validate_form(self.c, -self.b, self.a)


@dataclass(frozen=True)
class LatticePoint:
    x: int
    y: int
    value: int


@dataclass(frozen=True)
class RepCount:
    n: int
    count: int


def validate_form(a, b, c):
    """Check positive definiteness and build a QuadraticForm.

    Raises NotPositiveDefinite when a <= 0 or 4ac - b^2 <= 0 (these two
    conditions together force c > 0).
    """
    a, b, c = int(a), int(b), int(c)
    disc = 4 * a * c - b * b
    if a <= 0 or disc <= 0:
        raise NotPositiveDefinite(
            f"form ({a},{b},{c}) is not positive definite: "
            f"need a > 0 and 4ac - b^2 > 0, got 4ac - b^2 = {disc}"
        )
    return QuadraticForm(a, b, c, delta=disc, d=-disc)


def _isqrt_floor(n):
    """floor(sqrt(n)) for n >= 0, 0 for negative n."""
    return math.isqrt(n) if n >= 0 else -1


def _x_range(form, n_hi_num, n_hi_den=1):
    """Exact bound |x| <= floor(2 sqrt(c * n_hi / delta)) for Q(x,y) <= n_hi.

    Completing the square: delta * x^2 <= 4c * Q(x, y), so x^2 <= 4c n / delta.
    n_hi may be rational (num/den) to support real annulus bounds exactly.
    """
    # x^2 <= 4 c num / (delta den)  <=>  x^2 <= floor(4 c num / (delta den))
    bound = (4 * form.c * n_hi_num) // (form.delta * n_hi_den)
    return _isqrt_floor(bound)


def _y_interval(form, x, n_num, n_den=1):
    """Integer y-range with Q(x, y) <= n (n = n_num/n_den), as [y_lo, y_hi].

    Solves c y^2 + b x y + (a x^2 - n) <= 0 exactly: the roots are
    (-b x ± sqrt(D)) / (2 c) with D = 4 c n - delta x^2 (rational here).
    Returns an empty range (1, 0) when D < 0.
    """
    a, b, c = form.a, form.b, form.c
    # D_num / n_den with D_num = 4 c n_num - delta x^2 n_den  (all integers)
    d_num = 4 * c * n_num - form.delta * x * x * n_den
    if d_num < 0:
        return 1, 0
    # y bounds: (-b x - sqrt(d_num/n_den)) / (2c) <= y <= (-b x + sqrt(...)) / (2c)
    # Use floor(sqrt(d_num * n_den)) / n_den >= true sqrt shrink-safe handling:
    # ceil for lower root, floor for upper, then trim by exact membership.
    r = _isqrt_floor(d_num * n_den)  # floor(sqrt(d_num * n_den))
    y_lo = -(-(-b * x * n_den - r) // (2 * c * n_den))   # ceil((-bx - sqrt)/2c)
    y_hi = (-b * x * n_den + r) // (2 * c * n_den)       # floor((-bx + sqrt)/2c)
    # Trim at most one step on each side (isqrt truncation can overshoot by < 1).
    while y_lo <= y_hi and form(x, y_lo) * n_den > n_num:
        y_lo += 1
    while y_lo <= y_hi and form(x, y_hi) * n_den > n_num:
        y_hi -= 1
    # Extend if truncation was too aggressive (cannot happen with floor/ceil
    # above, but costs one check each).
    while form(x, y_lo - 1) * n_den <= n_num:
        y_lo -= 1
    while form(x, y_hi + 1) * n_den <= n_num:
        y_hi += 1
    return y_lo, y_hi


def representation_count(form, n):
    """Exact r_Q(n): number of (x, y) != (0, 0) with Q(x, y) = n."""
    n = int(n)
    if n < 1:
        raise DomainError(f"representation_count needs n >= 1, got {n}")
    count = 0
    xb = _x_range(form, n)
    for x in range(-xb, xb + 1):
        y_lo, y_hi = _y_interval(form, x, n)
        for y in range(y_lo, y_hi + 1):
            if form(x, y) == n:
                count += 1
    return count


def representation_counts_upto(form, x_max):
    """r_Q(n) for all 1 <= n <= x_max via a single sweep over the ellipse.

    Returns a list of RepCount for n = 1 .. x_max (zero counts included so the
    sequence indexes by n); the sweep visits each lattice point exactly once.
    """
    x_max = int(x_max)
    if x_max < 1:
        raise DomainError(f"representation_counts_upto needs x_max >= 1, got {x_max}")
    # ellipse Q <= x_max has area 2 pi x_max / sqrt(delta)
    est_points = 2.0 * math.pi * x_max / math.sqrt(form.delta)
    if est_points > SWEEP_POINT_BUDGET:
        raise CapacityExceeded(
            f"sweep to x_max={x_max} needs ~{est_points:.2e} points "
            f"(budget {SWEEP_POINT_BUDGET:.0e})"
        )
    counts = [0] * (x_max + 1)
    xb = _x_range(form, x_max)
    for x in range(-xb, xb + 1):
        y_lo, y_hi = _y_interval(form, x, x_max)
        for y in range(y_lo, y_hi + 1):
            q = form(x, y)
            if 1 <= q <= x_max:
                counts[q] += 1
    return [RepCount(n, counts[n]) for n in range(1, x_max + 1)]


def rep_count_array(form, x_max):
    """Integer array [r_Q(0)=0, r_Q(1), ..., r_Q(x_max)] for numeric use.

    Same exact counts as representation_counts_upto but swept with int64
    vector arithmetic (exact for any x_max within the point budget, since
    the values Q(x, y) <= x_max stay far below 2^63).
    """
    x_max = int(x_max)
    if x_max < 1:
        raise DomainError(f"rep_count_array needs x_max >= 1, got {x_max}")
    est_points = 2.0 * math.pi * x_max / math.sqrt(form.delta)
    if est_points > SWEEP_POINT_BUDGET:
        raise CapacityExceeded(
            f"sweep to x_max={x_max} needs ~{est_points:.2e} points "
            f"(budget {SWEEP_POINT_BUDGET:.0e})"
        )
    a, b, c = form.a, form.b, form.c
    counts = np.zeros(x_max + 1, dtype=np.int64)
    xb = _x_range(form, x_max)
    for x in range(-xb, xb + 1):
        # float bounds with slack, then exact trim of the two endpoints
        disc = 4 * c * x_max - form.delta * x * x
        if disc < 0:
            continue
        rt = math.sqrt(disc)
        y_lo = math.floor((-b * x - rt) / (2 * c)) - 1
        y_hi = math.ceil((-b * x + rt) / (2 * c)) + 1
        y = np.arange(y_lo, y_hi + 1, dtype=np.int64)
        q = a * x * x + b * x * y + c * y * y
        good = q[(q >= 1) & (q <= x_max)]
        counts += np.bincount(good, minlength=x_max + 1)
    return counts.tolist()


def _to_rational(value):
    """Exact rational (num, den) for an int or float bound."""
    if isinstance(value, int):
        return value, 1
    f = float(value)
    if not math.isfinite(f):
        raise DomainError(f"annulus bound must be finite, got {value}")
    num, den = f.as_integer_ratio()
    return num, den


def enumerate_annulus(form, n_lo, n_hi):
    """All lattice points with n_lo <= Q(x, y) <= n_hi, (0,0) excluded.

    Bounds may be non-integers; membership compares the exact integer Q(x, y)
    against the exact rationals n_lo, n_hi.  Points are ordered by x then y.
    """
    lo_num, lo_den = _to_rational(n_lo)
    hi_num, hi_den = _to_rational(n_hi)
    if lo_num <= 0:
        raise DomainError(f"annulus needs 0 < n_lo, got {n_lo}")
    if lo_num * hi_den > hi_num * lo_den:
        raise DomainError(f"annulus needs n_lo <= n_hi, got [{n_lo}, {n_hi}]")
    est_points = 2.0 * math.pi * float(hi_num) / float(hi_den) / math.sqrt(form.delta)
    if est_points > SWEEP_POINT_BUDGET:
        raise CapacityExceeded(
            f"annulus to n_hi={n_hi} needs ~{est_points:.2e} points "
            f"(budget {SWEEP_POINT_BUDGET:.0e})"
        )
    points = []
    xb = _x_range(form, hi_num, hi_den)
    for x in range(-xb, xb + 1):
        y_lo, y_hi = _y_interval(form, x, hi_num, hi_den)
        for y in range(y_lo, y_hi + 1):
            q = form(x, y)
            # exact rational comparisons: lo <= q <= hi
            if q * lo_den >= lo_num and q * hi_den <= hi_num and (x, y) != (0, 0):
                points.append(LatticePoint(x, y, q))
    return points
