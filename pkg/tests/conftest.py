import numpy as np
import pytest

from qshutter import DeltaPotential, default_constants, kinematics_from_energy, natural_units

ACCEPTANCE = []


def record(number: int, name: str, passed: bool, detail: str):
    """Register one acceptance line for the terminal summary."""
    ACCEPTANCE.append((number, name, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(
            f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {name}: {detail}")


@pytest.fixture(scope="session")
def consts():
    return default_constants()


@pytest.fixture(scope="session")
def nat():
    return natural_units()


@pytest.fixture(scope="session")
def fig1(consts):
    """Delta-barrier set-up observed at x = 0.3 Angstrom."""
    kin = kinematics_from_energy(0.01, consts)
    pot = DeltaPotential.from_strength(2.0, consts)
    return dict(x=0.3, kin=kin, pot=pot, t0=0.3 / consts.c,
                t_cl=0.3 * consts.m_over_hbar / kin.k)


def loglog_slope(t, y):
    return float(np.polyfit(np.log(t), np.log(y), 1)[0])
