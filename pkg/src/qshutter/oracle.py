"""Finite-difference propagators used as independent checks.

Both start from the cut-off wave (plane wave on x < 0, zero on x > 0, half
the left value at the node x = 0) on a uniform grid with hard walls, and
record the wave function at probe nodes every ``record_every`` steps.

* Schrodinger: Crank-Nicolson, exactly unitary for the Hermitian tridiagonal
  Hamiltonian. A delta is a single node carrying b_s / dx, which is the
  derivative-jump condition psi'(0+) - psi'(0-) = 2 b psi(0) written on the
  three-point stencil. A square barrier is a grid potential with half weight
  on edge nodes.
* Klein-Gordon: explicit leapfrog with the mass and potential term averaged
  over the outer time levels, stable for c dt / dx <= 1. A delta of strength
  b_r is spread over five nodes (trapezoid of width 4 dx, same area).

Walls must stay causally disconnected from every probe during the run; this
is checked, not assumed. For the Schrodinger scheme the far-left end of the
plane wave is switched on with an erf ramp of width ``taper``, so that the
wall edge radiates only slow components (a sharp cut there would send
arbitrarily fast ones towards the probes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erf
from scipy.sparse import diags
from scipy.sparse.linalg import splu

from .errors import ConfigError
from .scenario import Scenario


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    dx: float
    dt: float
    n_steps: int
    probes: tuple[float, ...]
    record_every: int = 1
    taper: float = 0.0

    # the ramp is centred this many widths inside the left wall
    TAPER_OFFSET = 4.0

    def __post_init__(self):
        if not (self.x_min < 0 < self.x_max):
            raise ConfigError("grid must satisfy x_min < 0 < x_max")
        if not (self.dx > 0 and self.dt > 0 and self.n_steps >= 1 and self.record_every >= 1):
            raise ConfigError("dx, dt, n_steps and record_every must be positive")
        if self.taper < 0 or self.x_min + 2 * self.TAPER_OFFSET * self.taper >= 0:
            raise ConfigError("taper must be >= 0 and fit inside x < 0")
        if abs(self.x_min / self.dx - round(self.x_min / self.dx)) > 1e-6:
            raise ConfigError("x = 0 must be a grid node (x_min multiple of dx)")
        for p in self.probes:
            if not 0 < p < self.x_max:
                raise ConfigError(f"probe {p} outside (0, x_max)")

    @property
    def x(self) -> np.ndarray:
        n0 = int(round(-self.x_min / self.dx))
        n1 = int(math.floor(self.x_max / self.dx + 1e-9))
        return np.arange(-n0, n1 + 1) * self.dx

    @property
    def origin(self) -> int:
        return int(round(-self.x_min / self.dx))

    def probe_indices(self) -> np.ndarray:
        return self.origin + np.rint(np.asarray(self.probes) / self.dx).astype(int)

    @property
    def t_final(self) -> float:
        return self.n_steps * self.dt

    @property
    def left_edge(self) -> float:
        """Where disturbances from the left end of the initial wave start."""
        return self.x_min + 2 * self.TAPER_OFFSET * self.taper

    @classmethod
    def covering(cls, probes, t_final: float, dx: float, dt: float, fast: float,
                 slow: float, record_every: int = 1, pad: float = 1.0,
                 taper: float = 0.0) -> "Grid1D":
        """Smallest grid satisfying :func:`check_containment` up to ``t_final``."""
        n_steps = int(math.ceil(t_final / dt - 1e-9))
        t_final = n_steps * dt
        p_lo, p_hi = min(probes), max(probes)
        echo = 0.5 * (fast * t_final + pad)
        left = max(echo, slow * t_final + pad - p_lo + 2 * cls.TAPER_OFFSET * taper)
        x_min = -dx * math.ceil(left / dx)
        x_max = dx * math.ceil((echo + 0.5 * p_hi) / dx)
        return cls(x_min, x_max, dx, dt, n_steps, tuple(float(p) for p in probes),
                   record_every, taper)


@dataclass(frozen=True)
class ProbeSeries:
    t: np.ndarray
    x: np.ndarray        # probe positions actually used (grid nodes)
    psi: np.ndarray      # shape (len(t), len(x))
    norm: np.ndarray | None = None


def schrodinger_speeds(scenario: Scenario, grid_dx: float, taper: float) -> tuple[float, float]:
    """(fast, slow) speed bounds for the Crank-Nicolson containment check.

    ``fast`` bounds the group velocity of every lattice mode,
    (2 hbar^2 / 2m dx) / hbar; Crank-Nicolson only slows modes down. It
    governs the radiation of the step at x = 0, which must not return from
    a wall. ``slow`` is 3 hbar k / m plus the spread of the erf ramp (width s,
    wavenumber content ~exp(-q^2 s^2 / 4), cut at q = 8/s); it governs the
    disturbance launched from the left end of the initial wave.
    """
    consts = scenario.consts
    fast = 2.0 * consts.hbar2_over_2m / (consts.hbar * grid_dx)
    extra = 8.0 / (consts.m_over_hbar * taper) if taper > 0 else fast
    slow = 3.0 * scenario.kinematics.k / consts.m_over_hbar + extra
    return fast, min(slow, fast)


def check_containment(grid: Grid1D, fast: float, slow: float):
    """Raise unless no wall disturbance can reach a probe within the run.

    Radiation from x = 0 (speed ``fast``) must not come back from either
    wall; the left end of the initial wave (speed ``slow``) must not reach
    a probe directly.
    """
    T = grid.t_final
    xs = grid.x[grid.probe_indices()]
    ok = (
        xs.min() - grid.left_edge >= slow * T
        and -grid.x_min + (xs.min() - grid.x_min) >= fast * T
        and grid.x_max + (grid.x_max - xs.max()) >= fast * T
    )
    if not ok:
        raise ConfigError(f"domain too small: a wall disturbance reaches a probe before t = {T:g}")


def schrodinger_grid(scenario: Scenario, probes, t_final: float, dx: float = 0.1,
                     stiffness: float = 2.0, taper: float = 20.0,
                     record_dt: float | None = None) -> Grid1D:
    """Grid with dt = stiffness * hbar / E_max, E_max = 4 hbar^2 / (2m dx^2).

    Crank-Nicolson keeps every lattice mode bounded but mis-times those with
    E dt / hbar >> 1; the step at x = 0 excites all of them, so dt is tied
    to the lattice cut-off rather than to the physical energy.
    """
    consts = scenario.consts
    e_max = 4.0 * consts.hbar2_over_2m / dx**2
    dt = stiffness * consts.hbar / e_max
    every = 1 if record_dt is None else max(1, int(round(record_dt / dt)))
    fast, slow = schrodinger_speeds(scenario, dx, taper)
    return Grid1D.covering(probes, t_final, dx, dt, fast, slow, every, taper=taper)


def kg_grid(scenario: Scenario, probes, t_final: float, dx: float,
            record_dt: float | None = None) -> Grid1D:
    """Leapfrog grid at c dt = dx."""
    c = scenario.consts.c
    dt = dx / c
    every = 1 if record_dt is None else max(1, int(round(record_dt / dt)))
    return Grid1D.covering(probes, t_final, dx, dt, c, c, every)


def _initial(x, k, alpha, ramp=None):
    left = np.exp(1j * k * x)
    if alpha is not None:
        left = left + np.exp(1j * alpha) * np.exp(-1j * k * x)
    if ramp is not None:
        left = left * ramp
    psi = np.where(x < 0, left, 0.0).astype(complex)
    i0 = int(np.argmin(np.abs(x)))
    psi[i0] = 0.5 * (1.0 if alpha is None else 1.0 + np.exp(1j * alpha))
    return psi


def _barrier_profile(x, V0, L, dx):
    v = np.where((x > 0) & (x < L), V0, 0.0)
    tol = 1e-9 * dx
    v[np.abs(x) < tol] = 0.5 * V0
    v[np.abs(x - L) < tol] = 0.5 * V0
    return v


def schrodinger_potential(scenario: Scenario, grid: Grid1D) -> np.ndarray:
    x = grid.x
    v = np.zeros_like(x)
    if scenario.potential == "delta":
        v[grid.origin] = scenario.b_s / grid.dx
    elif scenario.potential == "square":
        v = _barrier_profile(x, scenario.V0, scenario.L, grid.dx)
    return v


def crank_nicolson_operators(v, dx, dt, consts):
    """(A, B) with A psi^{n+1} = B psi^n."""
    n = v.size
    h2m = consts.hbar2_over_2m
    off = np.full(n - 1, -h2m / dx**2)
    diag = 2 * h2m / dx**2 + v
    H = diags([off, diag, off], [-1, 0, 1], format="csc", dtype=complex)
    a = 0.5j * dt / consts.hbar
    eye = diags([np.ones(n)], [0], format="csc", dtype=complex)
    return eye + a * H, eye - a * H


def propagate_schrodinger(scenario: Scenario, grid: Grid1D) -> ProbeSeries:
    """Crank-Nicolson propagation of the released wave."""
    if scenario.equation != "schrodinger":
        raise ConfigError("propagate_schrodinger needs a Schrodinger scenario")
    consts = scenario.consts
    k = scenario.kinematics.k
    check_containment(grid, *schrodinger_speeds(scenario, grid.dx, grid.taper))
    x = grid.x
    A, B = crank_nicolson_operators(schrodinger_potential(scenario, grid), grid.dx, grid.dt, consts)
    lu = splu(A)
    ramp = None
    if grid.taper > 0:
        centre = grid.x_min + grid.TAPER_OFFSET * grid.taper
        ramp = 0.5 * (1.0 + erf((x - centre) / grid.taper))
    psi = _initial(x, k, scenario.phase, ramp)
    idx = grid.probe_indices()
    ts, rows, norms = [0.0], [psi[idx].copy()], [np.vdot(psi, psi).real * grid.dx]
    for step in range(1, grid.n_steps + 1):
        psi = lu.solve(B @ psi)
        if step % grid.record_every == 0:
            ts.append(step * grid.dt)
            rows.append(psi[idx].copy())
            norms.append(np.vdot(psi, psi).real * grid.dx)
    return ProbeSeries(np.array(ts), x[idx], np.array(rows), np.array(norms))


def kg_potential(scenario: Scenario, grid: Grid1D) -> np.ndarray:
    """Potential term in 1/Angstrom^2; the delta b_r = 2 b is smeared over 4 dx."""
    v = np.zeros_like(grid.x)
    if scenario.potential == "delta":
        b_r = 2.0 * scenario.delta.b
        o = grid.origin
        w = np.array([0.5, 1.0, 1.0, 1.0, 0.5])
        v[o - 2:o + 3] = b_r * w / (4.0 * grid.dx)
    return v


def propagate_kg(scenario: Scenario, grid: Grid1D) -> ProbeSeries:
    """Leapfrog propagation of the released Klein-Gordon wave."""
    if scenario.equation != "klein_gordon":
        raise ConfigError("propagate_kg needs a Klein-Gordon scenario")
    consts = scenario.consts
    c = consts.c
    lam = c * grid.dt / grid.dx
    if lam > 1 + 1e-12:
        raise ConfigError(f"CFL violated: c dt / dx = {lam:.6g} > 1")
    check_containment(grid, c, c)
    kin = scenario.kinematics
    x = grid.x
    beta = 0.5 * (c * grid.dt) ** 2 * (consts.mu**2 + kg_potential(scenario, grid))
    inv = 1.0 / (1.0 + beta)
    lam2 = lam * lam

    def laplacian(u):
        out = np.zeros_like(u)
        out[1:-1] = u[2:] - 2.0 * u[1:-1] + u[:-2]
        return out

    prev = _initial(x, kin.k_r, scenario.phase)
    # initial velocity from the pre-opening solution, psi_t = -i c E_r psi;
    # first level from the scheme itself with psi^{-1} = psi^1 - 2 dt psi_t
    vel = -1j * c * kin.E_r * prev
    cur = 0.5 * (2.0 * prev + lam2 * laplacian(prev)) * inv + grid.dt * vel
    cur[0] = cur[-1] = 0.0
    idx = grid.probe_indices()
    ts, rows = [0.0], [prev[idx].copy()]
    if grid.record_every == 1:
        ts.append(grid.dt)
        rows.append(cur[idx].copy())
    for step in range(2, grid.n_steps + 1):
        nxt = (2.0 * cur + lam2 * laplacian(cur)) * inv - prev
        nxt[0] = nxt[-1] = 0.0
        prev, cur = cur, nxt
        if step % grid.record_every == 0:
            ts.append(step * grid.dt)
            rows.append(cur[idx].copy())
    return ProbeSeries(np.array(ts), x[idx], np.array(rows))


def relative_l2(a, b) -> float:
    """||a - b|| / ||b||."""
    a, b = np.asarray(a), np.asarray(b)
    den = np.linalg.norm(b)
    if den == 0:
        raise ConfigError("reference series is identically zero")
    return float(np.linalg.norm(a - b) / den)
