"""Scenario records, flat key=value scenario files and solver dispatch."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .barrier import SquareBarrier, find_antibound_poles, find_poles, psi_barrier
from .constants import PhysicalConstants, default_constants, kinematics_from_energy, natural_units
from .delta import DeltaPotential, psi_delta
from .errors import ConfigError
from .klein_gordon import kg_delta, kg_delta_coefficients, kg_free, kg_free_phase
from .moshinsky import free_phase, moshinsky_m

EQUATIONS = ("schrodinger", "klein_gordon")
POTENTIALS = ("free", "delta", "square")
INITIALS = ("absorbing", "reflecting", "phase")


@dataclass(frozen=True)
class Scenario:
    """One physical set-up.

    ``energy`` is in eV (or in units of m c^2 with ``natural_units``);
    ``b_s`` in eV Angstrom, ``V0`` in eV and ``L`` in Angstrom.
    """

    equation: str = "schrodinger"
    potential: str = "free"
    energy: float = 0.01
    b_s: float | None = None
    V0: float | None = None
    L: float | None = None
    initial: str = "absorbing"
    alpha: float | None = None
    natural_units: bool = False
    n_poles: int = 16

    def __post_init__(self):
        if self.equation not in EQUATIONS:
            raise ConfigError(f"equation must be one of {EQUATIONS}, got {self.equation!r}")
        if self.potential not in POTENTIALS:
            raise ConfigError(f"potential must be one of {POTENTIALS}, got {self.potential!r}")
        if self.initial not in INITIALS:
            raise ConfigError(f"initial must be one of {INITIALS}, got {self.initial!r}")
        if not (self.energy > 0 and math.isfinite(self.energy)):
            raise ConfigError("energy must be positive")
        if self.potential == "delta" and (self.b_s is None or not self.b_s >= 0):
            raise ConfigError("delta potential needs b_s >= 0")
        if self.potential == "square":
            if self.V0 is None or self.L is None:
                raise ConfigError("square potential needs V0 and L")
            SquareBarrier(self.V0, self.L)
            if self.equation == "klein_gordon":
                raise ConfigError("Klein-Gordon square barrier is not supported")
        if self.initial == "phase":
            if self.alpha is None or not 0 <= self.alpha < 2 * math.pi:
                raise ConfigError("phase initial condition needs 0 <= alpha < 2 pi")
        if self.n_poles < 1:
            raise ConfigError("n_poles must be >= 1")

    @property
    def consts(self) -> PhysicalConstants:
        return natural_units() if self.natural_units else default_constants()

    @property
    def phase(self) -> float | None:
        """Phase of the reflected initial component, None when absorbing."""
        if self.initial == "absorbing":
            return None
        if self.initial == "reflecting":
            return math.pi
        return float(self.alpha)

    @property
    def kinematics(self):
        return kinematics_from_energy(self.energy, self.consts)

    @property
    def delta(self) -> DeltaPotential:
        return DeltaPotential.from_strength(self.b_s, self.consts)

    @property
    def barrier(self) -> SquareBarrier:
        return SquareBarrier(self.V0, self.L)


@dataclass(frozen=True)
class SweepSpec:
    mode: str      # "time_at_x" or "space_at_t"
    fixed: float
    start: float
    stop: float
    count: int
    out: str | None = None

    def __post_init__(self):
        if self.mode not in ("time_at_x", "space_at_t"):
            raise ConfigError(f"unknown sweep mode {self.mode!r}")
        if self.count < 2:
            raise ConfigError("sweep needs at least 2 samples")
        if not (0 <= self.start < self.stop):
            raise ConfigError("sweep range must satisfy 0 <= min < max")

    def samples(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


_FLOAT_KEYS = {"energy", "b_s", "V0", "L", "alpha"}


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def parse_scenario(text: str) -> Scenario:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    known = {f.name for f in fields(Scenario)}
    kwargs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in kwargs:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            if key in _FLOAT_KEYS:
                kwargs[key] = float(value)
            elif key == "n_poles":
                kwargs[key] = int(value)
            elif key == "natural_units":
                kwargs[key] = _parse_bool(value)
            else:
                kwargs[key] = value
        except ValueError:
            raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from None
    return Scenario(**kwargs)


def load_scenario(path) -> Scenario:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file {path}: {exc}") from None
    return parse_scenario(text)


class Evaluator:
    """Callable psi(x, t) for a scenario; pole tables are computed once."""

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.consts = scenario.consts
        self.kin = scenario.kinematics
        self._poles = None
        self._antibound = None
        if scenario.potential == "square":
            self._poles = find_poles(scenario.barrier, scenario.n_poles, self.consts)
            self._antibound = find_antibound_poles(scenario.barrier, self.consts)
        if scenario.equation == "klein_gordon" and scenario.potential == "delta":
            # b_0 = b_r / 2 taken equal to the Schrodinger b
            self._kg_coeffs = kg_delta_coefficients(self.kin, scenario.delta.b, self.consts)
        self.truncation = 0.0

    def __call__(self, x, t):
        sc, c, kin, alpha = self.scenario, self.consts, self.kin, self.scenario.phase
        if sc.equation == "schrodinger":
            if sc.potential == "free":
                if alpha is None:
                    return moshinsky_m(x, kin.k, t, c)
                return free_phase(x, kin.k, t, alpha, c)
            if sc.potential == "delta":
                return psi_delta(x, kin.k, t, sc.delta, c, alpha=alpha)
            res = psi_barrier(x, kin.k, t, sc.barrier, n_poles=sc.n_poles,
                              initial="absorbing" if alpha is None else alpha, consts=c,
                              poles=self._poles, antibound=self._antibound)
            self.truncation = max(self.truncation, res.truncation)
            return res.psi
        if sc.potential == "free":
            if alpha is None:
                return kg_free(x, kin, t, c)
            return kg_free_phase(x, kin, t, alpha, c)
        return kg_delta(x, kin, t, self._kg_coeffs, c, alpha=alpha)


def evaluate(scenario: Scenario, x, t):
    """Transmitted wave function of ``scenario`` at (x, t), broadcasting."""
    return Evaluator(scenario)(x, t)
