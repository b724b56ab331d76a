"""The slow phase function, unit phases, and compensated power phases."""

import cmath
import math
import random

import pytest

from epzeta.errors import DomainError
from epzeta.special import e_unit, phi, phi_derivatives, power_phase

from oracles import phi_ref


# mpmath references for phi and its first three derivatives (40 dps)
_PHI_REF = {
    0.3: (1.147983757341434, 2.0816659994661326,
          -2.668802563418119, 14.37047534148218),
    1.0: (2.295587149392638, 1.4142135623730951,
          -0.3535533905932738, 0.6187184335382291),
    2.5: (4.196984256694045, 1.1832159566199232,
          -0.06761234037828133, 0.0502263099952947),
}


def test_phi_frozen_references():
    """phi and derivatives match the mpmath oracle to 1e-14 relative."""
    for u, refs in _PHI_REF.items():
        assert abs(phi(u) - refs[0]) <= 1e-14 * abs(refs[0])
        for order in (1, 2, 3):
            got = phi_derivatives(u, order)
            assert abs(got - refs[order]) <= 1e-13 * abs(refs[order]), (u, order)


def test_phi_oracle_consistency():
    """The frozen table itself reproduces from the live oracle."""
    for u, refs in _PHI_REF.items():
        for order in range(4):
            assert abs(phi_ref(u, order) - refs[order]) <= 1e-12 * abs(refs[order])


def test_phi_series_branch_continuity():
    """The small-u series and the closed form agree across the switch.

    The implementation switches representation near u = 1e-4; both sides
    of the seam must agree to full precision.
    """
    for u in (0.9e-4, 0.99e-4, 1.01e-4, 1.1e-4):
        ref = phi_ref(u)
        assert abs(phi(u) - ref) <= 1e-15 * abs(ref) + 1e-18, u


def test_phi_small_argument_scaling():
    """phi(u) = 2 sqrt(u) (1 + u/6 + O(u^2)) for small u."""
    for u in (1e-8, 1e-6, 1e-5):
        lead = 2.0 * math.sqrt(u)
        assert abs(phi(u) - lead) <= 0.2 * lead * u


def test_phi_domain():
    with pytest.raises(DomainError):
        phi(-0.5)
    with pytest.raises(DomainError):
        phi_derivatives(0.0, 2)
    with pytest.raises(DomainError):
        phi_derivatives(1.0, 4)


def test_phi_derivative_consistency():
    """phi' integrates phi'' etc.: central differences of order h^4 agree."""
    h = 1e-3
    for u in (0.4, 1.3, 3.7):
        for order in (1, 2):
            fd = (
                phi_derivatives(u - 2 * h, order) - 8 * phi_derivatives(u - h, order)
                + 8 * phi_derivatives(u + h, order) - phi_derivatives(u + 2 * h, order)
            ) / (12 * h)
            exact = phi_derivatives(u, order + 1)
            assert abs(fd - exact) <= 1e-9 * max(1.0, abs(exact)), (u, order)


def test_e_unit_exact_points():
    """Quarter-period phases are exact to one ulp."""
    assert e_unit(0.0) == 1.0 + 0.0j
    assert abs(e_unit(0.25) - 1j) <= 2e-16
    assert abs(e_unit(0.5) + 1.0) <= 2e-16
    assert abs(e_unit(-0.25) + 1j) <= 2e-16
    # periodicity with large integer offsets costs nothing
    assert abs(e_unit(1234567.25) - 1j) <= 1e-15


def test_e_unit_magnitude():
    rng = random.Random(271828)
    for _ in range(200):
        x = rng.uniform(-1e6, 1e6)
        assert abs(abs(e_unit(x)) - 1.0) <= 2e-16


def test_power_phase_matches_direct_small():
    """n^{-it} = exp(-i t ln n): reduced phase matches cmath for small t ln n."""
    for n in (2, 10, 97):
        for t in (0.5, 3.0, 20.0):
            ph = power_phase(n, t)
            direct = cmath.exp(-1j * t * math.log(n))
            assert abs(cmath.exp(-1j * ph.theta) - direct) <= 1e-12, (n, t)


def test_power_phase_large_ordinate():
    """At t = 1e8 the naive float product t*ln(n) has lost the fractional
    part; the split evaluation must still match a 40-digit reference."""
    import mpmath as mp

    t = 1.0e8
    for n in (2, 3, 1000003):
        ph = power_phase(n, t)
        with mp.workdps(40):
            frac = mp.fmod(mp.mpf(t) * mp.log(n), 2 * mp.pi)
        got = cmath.exp(-1j * ph.theta)
        ref = complex(mp.e ** (-1j * frac))
        assert abs(got - ref) <= 1e-10, n
