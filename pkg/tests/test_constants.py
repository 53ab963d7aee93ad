import math

import pytest
from hypothesis import given, strategies as st

from qshutter import default_constants, kinematics_from_energy, natural_units
from qshutter.constants import PhysicalConstants
from qshutter.errors import ConfigError


def test_default_values(consts):
    assert consts.hbar == pytest.approx(0.6582119569, rel=1e-10)
    assert consts.hbar2_over_2m == pytest.approx(3.8099821, rel=1e-7)
    assert consts.c == pytest.approx(2997.92458, rel=1e-12)
    # mc/hbar from CODATA 2018 electron mass and hbar c
    assert consts.mu == pytest.approx(258.96051, rel=1e-7)
    assert consts.rest_energy == pytest.approx(510998.95, rel=1e-8)
    assert consts.hbar * consts.c * consts.mu == pytest.approx(consts.rest_energy, rel=1e-12)


def test_inconsistent_constants_rejected():
    with pytest.raises(ConfigError):
        PhysicalConstants(hbar=1.0, hbar2_over_2m=0.5, c=1.0, mu=2.0)
    with pytest.raises(ConfigError):
        PhysicalConstants(hbar=-1.0, hbar2_over_2m=0.5, c=1.0, mu=1.0)


def test_fig1_kinematics(consts):
    kin = kinematics_from_energy(0.01, consts)
    assert kin.k == pytest.approx(0.0512317, abs=1e-7)
    assert 0 < kin.k_r / kin.k - 1 < 1e-7


def test_small_energy_limit(consts):
    kin = kinematics_from_energy(1e-14, consts)
    assert kin.k < 1e-7 and kin.k_r < 1e-7
    assert kin.E_r == pytest.approx(consts.mu, rel=1e-15)


@pytest.mark.parametrize("E", [0.0, -1.0, float("nan"), float("inf")])
def test_bad_energy(E):
    with pytest.raises(ConfigError):
        kinematics_from_energy(E)


def test_superluminal_mapping_rejected(nat):
    # natural units: k = sqrt(2E), so E = 0.5 gives k = mu
    with pytest.raises(ConfigError):
        kinematics_from_energy(0.5, nat)


@given(st.floats(1e-6, 1e3), st.booleans())
def test_dispersion_relation(E, natural):
    consts = natural_units() if natural else default_constants()
    if natural:
        E = E * 4e-4  # keep k below mu = 1
    kin = kinematics_from_energy(E, consts)
    mu = consts.mu
    assert abs(kin.E_r**2 - kin.k_r**2 - mu**2) <= 1e-12 * mu**2


@given(st.floats(1e-6, 1e3), st.floats(1e-6, 1e3))
def test_monotone(E1, E2):
    if E1 == E2:
        return
    lo, hi = sorted((E1, E2))
    a, b = kinematics_from_energy(lo), kinematics_from_energy(hi)
    assert a.k < b.k and a.k_r < b.k_r
