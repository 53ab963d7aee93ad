"""Transmitted Schrodinger wave for the delta barrier V(x) = b_s delta(x).

    psi(x, k, t) = T(k) M(x, k, t) + R(k) M(x, -ib, t),   x > 0,

with T = k / (k + ib), R = ib / (k + ib) and b = m b_s / hbar^2. The only
non-plane-wave term sits at the antibound pole k = -ib.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import PhysicalConstants, default_constants
from .errors import ConfigError
from .moshinsky import moshinsky_m


@dataclass(frozen=True)
class DeltaPotential:
    b_s: float  # eV Angstrom
    b: float    # 1 / Angstrom

    @classmethod
    def from_strength(cls, b_s: float, consts: PhysicalConstants | None = None) -> "DeltaPotential":
        consts = consts or default_constants()
        if not b_s >= 0:
            raise ConfigError("attractive delta potentials are not supported (b_s < 0)")
        return cls(b_s=float(b_s), b=b_s / (2.0 * consts.hbar2_over_2m))

    @property
    def antibound_pole(self) -> complex:
        return -1j * self.b


def _check_k(k):
    k = np.asarray(k, dtype=float)
    if np.any(~(k > 0)):
        raise ConfigError("k must be positive")
    return k


def transmission_delta(k, pot: DeltaPotential):
    k = _check_k(k)
    return k / (k + 1j * pot.b)


def reflection_delta(k, pot: DeltaPotential):
    k = _check_k(k)
    return 1j * pot.b / (k + 1j * pot.b)


def psi_delta(x, k: float, t, pot: DeltaPotential, consts: PhysicalConstants | None = None,
              alpha: float | None = None):
    """Transmitted wave for x > 0.

    With ``alpha`` given, the initial wave is exp(ikx) + exp(i alpha) exp(-ikx)
    and the reflected component contributes T(-k) M(x,-k,t) + R(-k) M(x,-ib,t).
    """
    consts = consts or default_constants()
    k = float(_check_k(k))
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ConfigError("psi_delta is the transmitted solution: x must be > 0")
    qb = pot.antibound_pole
    m_b = moshinsky_m(x, qb, t, consts)
    psi = transmission_delta(k, pot) * moshinsky_m(x, k, t, consts) + reflection_delta(k, pot) * m_b
    if alpha is not None:
        denom = -k + 1j * pot.b
        psi = psi + np.exp(1j * alpha) * (
            (-k / denom) * moshinsky_m(x, -k, t, consts) + (1j * pot.b / denom) * m_b
        )
    return psi
