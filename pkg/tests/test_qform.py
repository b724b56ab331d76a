"""Representation counting and annulus enumeration."""

import math
import random
from fractions import Fraction

import pytest

from epzeta.errors import CapacityExceeded, DomainError, NotPositiveDefinite
from epzeta.qform import (
    QuadraticForm,
    enumerate_annulus,
    rep_count_array,
    representation_count,
    representation_counts_upto,
    validate_form,
)

from oracles import eisenstein_r2, jacobi_r2


def test_validate_form_rejects_indefinite():
    """a <= 0 or 4ac - b^2 <= 0 must raise, with the discriminant named."""
    for bad in [(1, 0, -1), (0, 1, 1), (-2, 0, 5), (1, 2, 1)]:
        with pytest.raises(NotPositiveDefinite):
            validate_form(*bad)


def test_form_evaluation_exact():
    """Q(x, y) is exact integer arithmetic."""
    q = validate_form(2, 1, 3)
    assert q(1, 0) == 2
    assert q(0, 1) == 3
    assert q(1, 1) == 6
    assert q(-3, 2) == 2 * 9 + 1 * (-6) + 3 * 4  # 24
    assert q.delta == 4 * 2 * 3 - 1


def test_hand_counts_square_lattice():
    """r(25) = 12 for x^2+y^2: (+-5,0),(0,+-5),(+-3,+-4),(+-4,+-3)."""
    q = validate_form(1, 0, 1)
    assert representation_count(q, 25) == 12
    assert representation_count(q, 1) == 4
    assert representation_count(q, 3) == 0
    assert representation_count(q, 2) == 4


def test_counts_match_divisor_formulas():
    """r(n) agrees with the character-divisor-sum oracles up to n = 500."""
    sq = validate_form(1, 0, 1)
    hexf = validate_form(1, 1, 1)
    sq_counts = rep_count_array(sq, 500)
    hex_counts = rep_count_array(hexf, 500)
    for n in range(1, 501):
        assert sq_counts[n] == jacobi_r2(n), f"square lattice at n={n}"
        assert hex_counts[n] == eisenstein_r2(n), f"hexagonal lattice at n={n}"


def test_counts_upto_matches_scalar():
    """The bulk counter agrees with per-n counting for a skew form."""
    q = validate_form(2, 1, 3)
    upto = representation_counts_upto(q, 120)
    assert [rc.n for rc in upto] == list(range(1, 121))
    for rc in upto:
        assert rc.count == representation_count(q, rc.n)


def test_count_total_is_ellipse_area():
    """sum_{n<=x} r(n) ~ 2 pi x / sqrt(delta) within the sqrt(x) law."""
    for coeffs in [(1, 0, 1), (1, 1, 1), (2, 1, 3)]:
        q = validate_form(*coeffs)
        x = 4000
        total = sum(rc.count for rc in representation_counts_upto(q, x))
        main = 2.0 * math.pi * x / math.sqrt(q.delta)
        assert abs(total - main) <= 6.0 * math.sqrt(x), coeffs


def test_annulus_membership_exact():
    """Enumerated points satisfy n_lo <= Q(x,y) <= n_hi exactly, and the
    level counts collapse to r(n)."""
    q = validate_form(1, 0, 1)
    pts = enumerate_annulus(q, 64.0, 128.0)
    assert pts, "annulus should not be empty"
    by_level = {}
    for p in pts:
        v = q(p.x, p.y)
        assert p.value == v
        assert 64 <= v <= 128
        by_level[v] = by_level.get(v, 0) + 1
    for n, cnt in by_level.items():
        assert cnt == representation_count(q, n)
    expected = sum(representation_count(q, n) for n in range(64, 129))
    assert len(pts) == expected


def test_annulus_fractional_edges():
    """Membership at non-integer edges is decided by the exact rational
    comparison, not a float rounding of it."""
    q = validate_form(1, 0, 1)
    # 64.5 excludes Q = 64, 127.5 excludes Q = 128; within that range the
    # occupied levels are exactly the integers with r(n) > 0 (126 and 127
    # are not sums of two squares, so the top occupied level is 125)
    pts = enumerate_annulus(q, 64.5, 127.5)
    values = {q(p.x, p.y) for p in pts}
    expected = {n for n in range(65, 128) if representation_count(q, n) > 0}
    assert values == expected
    assert max(values) == 125


def test_annulus_rejects_nonpositive_start():
    with pytest.raises(DomainError):
        enumerate_annulus(validate_form(1, 0, 1), 0.0, 10.0)


def test_annulus_budget():
    """A huge annulus trips the sweep budget rather than hanging."""
    with pytest.raises(CapacityExceeded):
        enumerate_annulus(validate_form(1, 0, 1), 1.0, 1.0e17)


def test_adjoint_form():
    """The adjoint of (a,b,c) is (c,-b,a): same discriminant, swapped axes."""
    q = validate_form(2, 1, 3)
    adj = q.adjoint()
    assert (adj.a, adj.b, adj.c) == (3, -1, 2)
    assert adj.delta == q.delta
    rng = random.Random(1905)
    for _ in range(50):
        x = rng.randrange(-20, 21)
        y = rng.randrange(-20, 21)
        assert adj(x, y) == q(y, -x) == q(-y, x)
