"""Square barrier: stationary amplitudes, S-matrix poles and the transient
resonance expansion.

Barrier V0 on 0 < x < L. With k0^2 = 2 m V0 / hbar^2 and K = sqrt(k^2 - k0^2),
the outgoing-wave denominator

    F(k) = 2k cos(KL) - i (K^2 + k^2) sin(KL)/K

is entire in k (even in K) and

    T(k) = 2k exp(-ikL) / F(k),   R(k) = -i k0^2 (sin(KL)/K) / F(k).

The poles of T are the zeros of F. For x >= L the transmitted wave is

    psi = T(k) M(x,k,t) + e^{i alpha} T(-k) M(x,-k,t)
          - i sum_j rho_j M(x,q_j,t) [1/(k - q_j) - e^{i alpha}/(k + q_j)],

rho_j = u_j(0) u_j(L) exp(-i q_j L), where the sum runs over the
fourth-quadrant poles, their mirrors -q_j* (rho -> conj(rho)) and any
antibound poles on the negative imaginary axis. Absorbing start drops the
alpha terms; the reflecting start is alpha = pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .constants import PhysicalConstants, default_constants
from .errors import ConfigError, NumericalError, PoleSearchError
from .moshinsky import moshinsky_m

POLE_TOL = 1e-10
_SMALL_KL = 1e-3


@dataclass(frozen=True)
class SquareBarrier:
    V0: float  # eV
    L: float   # Angstrom

    def __post_init__(self):
        if not (self.V0 > 0 and math.isfinite(self.V0)):
            raise ConfigError("barrier height V0 must be positive")
        if not (self.L > 0 and math.isfinite(self.L)):
            raise ConfigError("barrier width L must be positive")

    def k0_squared(self, consts: PhysicalConstants | None = None) -> float:
        consts = consts or default_constants()
        return self.V0 / consts.hbar2_over_2m


@dataclass(frozen=True)
class ResonancePole:
    n: int
    k: complex
    u0uL: complex
    residual: float
    kind: str = "resonance"  # or "antibound"


@dataclass(frozen=True)
class BarrierResult:
    psi: complex | np.ndarray
    truncation: float
    n_poles: int
    converged: bool = True


# ---------------------------------------------------------------- kernels

def _sinc_l(K, L):
    """sin(KL)/K, regular at K = 0."""
    K = np.asarray(K, dtype=complex)
    KL = K * L
    small = np.abs(KL) < _SMALL_KL
    safe = np.where(small, 1.0, K)
    k2l2 = KL * KL
    return np.where(small, L * (1 - k2l2 / 6 + k2l2 * k2l2 / 120), np.sin(KL) / safe)


def _parts(k, bar: SquareBarrier, consts):
    k = np.asarray(k, dtype=complex)
    k0sq = bar.k0_squared(consts)
    K = np.sqrt(k * k - k0sq)
    return k, K, k0sq, np.cos(K * bar.L), _sinc_l(K, bar.L)


def pole_function(k, bar: SquareBarrier, consts: PhysicalConstants | None = None):
    """F(k); its zeros are the S-matrix poles."""
    consts = consts or default_constants()
    k, K, k0sq, c, s = _parts(k, bar, consts)
    return 2 * k * c - 1j * (2 * k * k - k0sq) * s


def pole_function_derivative(k, bar: SquareBarrier, consts: PhysicalConstants | None = None):
    consts = consts or default_constants()
    k, K, k0sq, c, s = _parts(k, bar, consts)
    L = bar.L
    K2 = K * K
    small = np.abs(K * L) < _SMALL_KL
    d = np.where(small, -L**3 / 3 + K2 * L**5 / 30, (L * c - s) / np.where(small, 1.0, K2))
    return 2 * c - 2 * k * k * L * s - 1j * (4 * k * s + (2 * k * k - k0sq) * k * d)


def pole_residual(k, bar: SquareBarrier, consts: PhysicalConstants | None = None) -> float:
    """|F(k)| relative to the size of its two terms."""
    consts = consts or default_constants()
    k, K, k0sq, c, s = _parts(k, bar, consts)
    a = 2 * k * c
    b = 1j * (2 * k * k - k0sq) * s
    return float(np.abs(a - b) / max(np.abs(a) + np.abs(b), 1e-300))


def _check_k(k):
    k = np.asarray(k, dtype=float)
    if np.any(~(k > 0)):
        raise ConfigError("k must be positive")
    return k


def transmission_square(k, bar: SquareBarrier, consts: PhysicalConstants | None = None):
    """T(k) for real k > 0, with the exp(-ikL) output convention."""
    k = _check_k(k)
    return 2 * k * np.exp(-1j * k * bar.L) / pole_function(k, bar, consts)


def reflection_square(k, bar: SquareBarrier, consts: PhysicalConstants | None = None):
    consts = consts or default_constants()
    k = _check_k(k)
    _, K, k0sq, _, s = _parts(k, bar, consts)
    return -1j * k0sq * s / pole_function(k, bar, consts)


# ------------------------------------------------------------ pole finding

def _newton(k, bar, consts, max_iter=80):
    for _ in range(max_iter):
        f = complex(pole_function(k, bar, consts))
        df = complex(pole_function_derivative(k, bar, consts))
        if df == 0:
            return k, False
        step = f / df
        lim = 0.5 * max(abs(k), 1.0 / bar.L)
        if abs(step) > lim:
            step *= lim / abs(step)
        k -= step
        if abs(step) <= 1e-15 * abs(k):
            return k, True
    return k, pole_residual(k, bar, consts) < POLE_TOL


def _seed(n, bar, consts):
    """Fixed-point iteration of K L = n pi - i log((K + k)/(K - k))."""
    k0sq = bar.k0_squared(consts)
    K = complex(n * math.pi / bar.L)
    for _ in range(60):
        k = np.sqrt(K * K + k0sq)
        K = (n * math.pi - 1j * np.log((K + k) / (K - k))) / bar.L
    return complex(np.sqrt(K * K + k0sq))


def resonant_state_data(bar: SquareBarrier, pole: complex,
                        consts: PhysicalConstants | None = None) -> tuple[complex, complex]:
    """u(0), u(L) of the outgoing eigenfunction at ``pole``, normalized by

        int_0^L u^2 dx + i (u(0)^2 + u(L)^2) / (2 k) = 1.
    """
    consts = consts or default_constants()
    pole = complex(pole)
    res = pole_residual(pole, bar, consts)
    if not res < POLE_TOL:
        raise NumericalError(f"{pole!r} is not a pole (relative residual {res:.3g})")
    k, K, k0sq, c, s = _parts(pole, bar, consts)
    k, K, c, s = complex(k), complex(K), complex(c), complex(s)
    L = bar.L
    uL = c - 1j * k * s
    if abs(K * L) < _SMALL_KL:
        s2 = L - 2 * K * K * L**3 / 3
        lm = 2 * L**3 / 3 - 2 * K * K * L**5 / 15
    else:
        s2 = np.sin(2 * K * L) / (2 * K)
        lm = (L - s2) / (K * K)
    integral = 0.5 * (L + s2) - 1j * k * s * s - 0.5 * k * k * lm
    norm = integral + 1j * (1 + uL * uL) / (2 * k)
    if norm == 0:
        raise NumericalError(f"resonant state at {pole!r} cannot be normalized")
    root = np.sqrt(norm)
    return complex(1 / root), complex(uL / root)


def find_poles(bar: SquareBarrier, n_max: int,
               consts: PhysicalConstants | None = None) -> list[ResonancePole]:
    """First ``n_max`` fourth-quadrant poles, sorted by modulus."""
    consts = consts or default_constants()
    if n_max < 1:
        raise ConfigError("n_max must be >= 1")
    found: list[complex] = []

    def table(ks):
        out = []
        for i, kn in enumerate(sorted(ks, key=abs)[:n_max], start=1):
            u0, uL = resonant_state_data(bar, kn, consts)
            out.append(ResonancePole(n=i, k=kn, u0uL=u0 * uL,
                                     residual=pole_residual(kn, bar, consts)))
        return out

    def add(k):
        if k.real < 0:
            k = -k.conjugate()
        # roots on the imaginary axis are antibound poles, handled separately
        if k.imag < 0 and abs(k.real) > 1e-9 * abs(k) and not any(
                abs(k - f) < 1e-8 * abs(k) for f in found):
            found.append(k)

    rng = np.random.default_rng(0)
    # n = 0 is the lowest (sub-barrier) member; a few extra cover reordering
    n = 0
    while len(found) < n_max + 2 and n < 4 * n_max + 20:
        seed = _seed(n, bar, consts)
        k, ok = _newton(seed, bar, consts)
        tries = 0
        while not ok and tries < 5:
            trial = seed * (1 + 0.05 * (rng.standard_normal() + 1j * rng.standard_normal()))
            k, ok = _newton(trial, bar, consts)
            tries += 1
        if not ok:
            raise PoleSearchError(f"pole search failed for n={n} from seed {seed!r}", table(found))
        add(k)
        n += 1
    if len(found) < n_max:
        raise PoleSearchError(f"only {len(found)} poles located, {n_max} requested", table(found))

    # completeness: no zero of F with modulus below the last returned pole may be missing
    found.sort(key=abs)
    radius = 0.5 * (abs(found[n_max - 1]) + abs(found[n_max])) if len(found) > n_max \
        else 1.05 * abs(found[-1])
    expected = count_zeros(bar, radius, consts)
    inside = [f for f in found if abs(f) < radius]
    if expected != len(inside):
        for re in np.linspace(0.02, 1.0, 25) * radius:
            for im in np.linspace(-1.0, -0.02, 25) * radius:
                k, ok = _newton(complex(re, im), bar, consts)
                if ok:
                    add(k)
        found.sort(key=abs)
        inside = [f for f in found if abs(f) < radius]
        if expected != len(inside):
            raise PoleSearchError(
                f"{expected} poles expected below |k| = {radius:.6g}, {len(inside)} located",
                table(found))
    return table(found)


def count_zeros(bar: SquareBarrier, radius: float,
                consts: PhysicalConstants | None = None) -> int:
    """Number of zeros of F in the open quarter disc |k| < radius, Re k > 0, Im k < 0.

    Argument principle on the boundary, pulled in slightly from both axes so
    that antibound zeros on the imaginary axis are excluded.
    """
    consts = consts or default_constants()
    eps = 1e-7 * radius
    n = int(max(4000, 400 * radius * bar.L))
    theta = np.linspace(-0.5 * np.pi + 1e-7, -1e-7, n)
    arc = radius * np.exp(1j * theta)
    path = np.concatenate([
        np.linspace(-1j * eps + eps, arc[0].real + 1j * arc[0].imag, n),
        arc[1:],
        np.linspace(arc[-1], eps - 1j * eps, n)[1:],
    ])
    # F ~ exp(|Im K| L) on the arc; rescale before taking the phase
    f = pole_function(path, bar, consts) * np.exp(-np.abs(path.imag) * bar.L)
    phase = np.unwrap(np.angle(np.append(f, f[0])))
    winding = (phase[-1] - phase[0]) / (2 * np.pi)
    return int(round(winding))


def find_antibound_poles(bar: SquareBarrier, consts: PhysicalConstants | None = None,
                         n_scan: int = 4000) -> list[ResonancePole]:
    """Poles on the negative imaginary axis, k = -i kappa.

    There F(-i kappa) = -i g(kappa) with g real; sign changes of g on a
    logarithmic kappa grid are refined by Brent's method. g is scaled by
    2 exp(-Kappa L) so that it stays finite for thick barriers.
    """
    consts = consts or default_constants()
    k0sq = bar.k0_squared(consts)
    k0 = math.sqrt(k0sq)
    top = 20.0 * (k0 + 1.0 / bar.L) + 20.0

    def g(kappa):
        kap = math.sqrt(kappa * kappa + k0sq)
        e = math.exp(-2.0 * kap * bar.L)
        return 2.0 * kappa * (1.0 + e) - (2.0 * kappa * kappa + k0sq) * (-math.expm1(-2.0 * kap * bar.L)) / kap

    grid = np.geomspace(1e-8 * top, top, n_scan)
    vals = np.array([g(v) for v in grid])
    out = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa == 0 or fa * fb < 0:
            kappa = a if fa == 0 else brentq(g, a, b, xtol=1e-15 * b, rtol=1e-15)
            k = -1j * kappa
            res = pole_residual(k, bar, consts)
            if res < POLE_TOL:
                u0, uL = resonant_state_data(bar, k, consts)
                out.append(ResonancePole(n=len(out) + 1, k=k, u0uL=u0 * uL, residual=res,
                                         kind="antibound"))
    return out


# --------------------------------------------------------------- transient

def _alpha_of(initial):
    if initial == "absorbing":
        return None
    if initial == "reflecting":
        return math.pi
    try:
        return float(initial)
    except (TypeError, ValueError):
        raise ConfigError(f"unknown initial condition {initial!r}") from None


def psi_barrier(x, k: float, t, bar: SquareBarrier, n_poles: int = 16,
                initial="absorbing", consts: PhysicalConstants | None = None,
                poles: list[ResonancePole] | None = None,
                antibound: list[ResonancePole] | None = None,
                tol: float | None = None) -> BarrierResult:
    """Transmitted wave for x >= L as a resonance expansion.

    Parameters
    ----------
    n_poles : int
        Number of fourth-quadrant poles; each comes with its mirror -k_n*.
        Antibound poles are always included.
    initial : {"absorbing", "reflecting"} or float
        A float is the phase alpha of the reflected initial component.
    poles, antibound : list of ResonancePole, optional
        Precomputed tables (reused across calls).
    tol : float, optional
        If given, ``converged`` reports ``truncation <= tol``.

    Returns
    -------
    BarrierResult
        ``truncation`` is the largest magnitude of the last included pole
        pair's contribution over the evaluated points.
    """
    consts = consts or default_constants()
    k = float(_check_k(k))
    if n_poles < 1:
        raise ConfigError("n_poles must be >= 1")
    x = np.asarray(x, dtype=float)
    if np.any(x < bar.L * (1 - 1e-14)):
        raise ConfigError("psi_barrier is valid only for x >= L")
    alpha = _alpha_of(initial)
    if poles is None:
        poles = find_poles(bar, n_poles, consts)
    elif len(poles) < n_poles:
        raise ConfigError(f"pole table has {len(poles)} entries, {n_poles} requested")
    if antibound is None:
        antibound = find_antibound_poles(bar, consts)
    phase = None if alpha is None else np.exp(1j * alpha)

    def weight(q):
        w_ = 1 / (k - q)
        if phase is not None:
            w_ = w_ - phase / (k + q)
        return w_

    psi = transmission_square(k, bar, consts) * moshinsky_m(x, k, t, consts)
    if phase is not None:
        t_minus = 2 * (-k) * np.exp(1j * k * bar.L) / pole_function(-k, bar, consts)
        psi = psi + phase * t_minus * moshinsky_m(x, -k, t, consts)

    last = 0.0
    for p in poles[:n_poles]:
        rho = p.u0uL * np.exp(-1j * p.k * bar.L)
        q2 = -p.k.conjugate()
        term = (rho * weight(p.k) * moshinsky_m(x, p.k, t, consts)
                + np.conj(rho) * weight(q2) * moshinsky_m(x, q2, t, consts))
        psi = psi - 1j * term
        last = float(np.max(np.abs(term)))
    for p in antibound:
        rho = p.u0uL * np.exp(-1j * p.k * bar.L)
        psi = psi - 1j * rho * weight(p.k) * moshinsky_m(x, p.k, t, consts)

    if not np.all(np.isfinite(psi)):
        raise NumericalError("non-finite resonance expansion")
    converged = True if tol is None else last <= tol
    return BarrierResult(psi=psi, truncation=last, n_poles=n_poles, converged=converged)
