"""Shared fixtures: the three reference forms and the desk scenarios."""

import pytest

from epzeta.qform import validate_form
from epzeta import expsum as xs


@pytest.fixture(scope="session")
def form_square():
    """x^2 + y^2 (delta = 4)."""
    return validate_form(1, 0, 1)


@pytest.fixture(scope="session")
def form_hex():
    """x^2 + xy + y^2 (delta = 3)."""
    return validate_form(1, 1, 1)


@pytest.fixture(scope="session")
def form_213():
    """2x^2 + xy + 3y^2 (delta = 23)."""
    return validate_form(2, 1, 3)


def desk_scenarios():
    """The five desk-scale scenarios (T = 1e4, K = ceil(T^(4/7)) = 194).

    Two discriminants, three divisor choices delta0, annuli up to
    N' = 2N = 388; all validate against the default comparability
    constants (checked in test_expsum_scenario).
    """
    return [
        xs.build_scenario(1e4, 194.0, 4, N=64.0),
        xs.build_scenario(1e4, 194.0, 4, N=96.0, Nprime=180.0, delta0=2),
        xs.build_scenario(1e4, 194.0, 3, N=64.0),
        xs.build_scenario(1e4, 194.0, 3, N=128.0, Nprime=256.0, delta0=3),
        xs.build_scenario(1e4, 194.0, 4, N=194.0, Nprime=388.0, delta0=4),
    ]


@pytest.fixture(scope="session")
def desks():
    return desk_scenarios()


@pytest.fixture(scope="session")
def desk(desks):
    """The first desk scenario: (1,0,1), h/k = 28/57, N = 64, N' = 128."""
    return desks[0]
