"""Exact transients of quantum shutter problems.

Schrodinger (free, delta barrier, square barrier via S-matrix poles) and
Klein-Gordon (free, delta barrier) transmitted wave functions, plus an
independent finite-difference propagator used to check them.
"""

from .constants import (
    Kinematics,
    PhysicalConstants,
    default_constants,
    kinematics_from_energy,
    natural_units,
)
from .special import FaddeevaResult, bessel_j_seq, faddeeva
from .moshinsky import free_absorbing, free_phase, moshinsky_m
from .delta import DeltaPotential, psi_delta, reflection_delta, transmission_delta
from .barrier import (
    ResonancePole,
    SquareBarrier,
    find_antibound_poles,
    find_poles,
    psi_barrier,
    resonant_state_data,
    transmission_square,
)
from .klein_gordon import (
    KGDeltaCoefficients,
    KGSeriesParams,
    kg_delta,
    kg_delta_coefficients,
    kg_free,
    kg_free_phase,
)

__all__ = [
    "DeltaPotential",
    "FaddeevaResult",
    "KGDeltaCoefficients",
    "KGSeriesParams",
    "Kinematics",
    "PhysicalConstants",
    "ResonancePole",
    "SquareBarrier",
    "bessel_j_seq",
    "default_constants",
    "faddeeva",
    "find_antibound_poles",
    "find_poles",
    "free_absorbing",
    "free_phase",
    "kg_delta",
    "kg_delta_coefficients",
    "kg_free",
    "kg_free_phase",
    "kinematics_from_energy",
    "moshinsky_m",
    "natural_units",
    "psi_barrier",
    "psi_delta",
    "reflection_delta",
    "resonant_state_data",
    "transmission_delta",
    "transmission_square",
]
