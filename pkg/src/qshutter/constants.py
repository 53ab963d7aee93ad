"""Unit system (eV, Angstrom, fs) and kinematics shared by all solvers."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants as _sc

from .errors import ConfigError

# CODATA values, converted once to (eV, Angstrom, fs).
_HBARC = _sc.physical_constants["reduced Planck constant times c in MeV fm"][0] * 1e6 * 1e-5
_MC2 = _sc.physical_constants["electron mass energy equivalent in MeV"][0] * 1e6
_C = _sc.c * 1e10 * 1e-15


@dataclass(frozen=True)
class PhysicalConstants:
    """Electron-like particle constants.

    Attributes
    ----------
    hbar : float
        Reduced Planck constant (eV fs).
    hbar2_over_2m : float
        hbar^2 / 2m (eV Angstrom^2).
    c : float
        Speed of light (Angstrom / fs).
    mu : float
        Inverse reduced Compton wavelength m c / hbar (1 / Angstrom).
    """

    hbar: float
    hbar2_over_2m: float
    c: float
    mu: float

    def __post_init__(self):
        for name in ("hbar", "hbar2_over_2m", "c", "mu"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if not math.isclose(self.hbar * self.c * self.mu, self.rest_energy, rel_tol=1e-9):
            raise ConfigError("mu inconsistent with hbar, m and c")

    @property
    def m_over_hbar(self) -> float:
        """m / hbar in fs / Angstrom^2."""
        return self.hbar / (2.0 * self.hbar2_over_2m)

    @property
    def rest_energy(self) -> float:
        """m c^2, in the energy unit of ``hbar2_over_2m``."""
        return self.hbar**2 * self.c**2 / (2.0 * self.hbar2_over_2m)


@dataclass(frozen=True)
class Kinematics:
    E: float
    k: float
    k_r: float
    E_r: float


def default_constants() -> PhysicalConstants:
    hbar = _HBARC / _C
    h2m = _HBARC**2 / (2.0 * _MC2)
    return PhysicalConstants(hbar=hbar, hbar2_over_2m=h2m, c=_C, mu=_MC2 / _HBARC)


def natural_units() -> PhysicalConstants:
    """hbar = m = c = 1."""
    return PhysicalConstants(hbar=1.0, hbar2_over_2m=0.5, c=1.0, mu=1.0)


def kinematics_from_energy(E: float, consts: PhysicalConstants | None = None) -> Kinematics:
    """Nonrelativistic wavenumber and its relativistic counterparts for energy ``E``.

    ``k`` follows from E = hbar^2 k^2 / 2m; the relativistic wavenumber is
    k_r = k (1 - (k/mu)^2)^(-1/2) and E_r = sqrt(k_r^2 + mu^2) is measured in
    inverse length, so that the pre-opening wave is exp(i(k_r x - E_r c t)).
    """
    consts = consts or default_constants()
    if not (E > 0 and math.isfinite(E)):
        raise ConfigError(f"energy must be positive and finite, got {E!r}")
    k = math.sqrt(E / consts.hbar2_over_2m)
    beta = k / consts.mu
    if beta >= 1.0:
        raise ConfigError(f"k = {k:g} exceeds mu = {consts.mu:g}; relativistic mapping undefined")
    gamma = 1.0 / math.sqrt((1.0 - beta) * (1.0 + beta))
    return Kinematics(E=E, k=k, k_r=k * gamma, E_r=consts.mu * gamma)
