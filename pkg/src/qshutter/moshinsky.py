"""Moshinsky function and the free-shutter Schrodinger solutions.

    M(x, q, t) = 1/2 exp(i m x^2 / 2 hbar t) exp(y^2) erfc(y),
    y = exp(-i pi/4) (m / 2 hbar t)^(1/2) (x - hbar q t / m).

All functions broadcast over numpy arrays.
"""

from __future__ import annotations

import numpy as np

from .constants import PhysicalConstants, default_constants
from .errors import ConfigError
from .special import w

_ROT = np.exp(-0.25j * np.pi)


def moshinsky_argument(x, q, t, consts: PhysicalConstants | None = None):
    """y(x, q, t); only meaningful for t > 0."""
    consts = consts or default_constants()
    moh = consts.m_over_hbar
    t = np.asarray(t, dtype=float)
    return _ROT * np.sqrt(moh / (2.0 * t)) * (x - q * t / moh)


def _check_q(q):
    q = np.asarray(q, dtype=complex)
    if not np.all(np.isfinite(q)):
        raise ConfigError("q must be finite")
    tol = 1e-12 * np.maximum(np.abs(q), 1.0)
    if np.any(q.imag > tol):
        raise ConfigError("q in the upper half k-plane is not supported")
    return q


def moshinsky_m(x, q, t, consts: PhysicalConstants | None = None):
    """Moshinsky function M(x, q, t) for x >= 0, t >= 0 and Im q <= 0.

    At t = 0 the value is the initial condition: 0 for x > 0 and 1/2 (the
    t -> 0+ limit) at x = 0. Where ``i y`` falls in the lower half-plane the
    growing part is combined analytically with the Gaussian prefactor, so
    M = exp(i(q x - hbar q^2 t / 2m)) - 1/2 exp(i m x^2 / 2 hbar t) w(-i y).
    """
    consts = consts or default_constants()
    q = _check_q(q)
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(t))):
        raise ConfigError("x and t must be finite")
    if np.any(t < 0) or np.any(x < 0):
        raise ConfigError("moshinsky_m requires x >= 0 and t >= 0")
    x, q, t = np.broadcast_arrays(x, q, t)
    out = np.zeros(x.shape, dtype=complex)
    out[(t == 0) & (x == 0)] = 0.5

    pos = t > 0
    if pos.any():
        moh = consts.m_over_hbar
        xp, qp, tp = x[pos], q[pos], t[pos]
        iy = 1j * _ROT * np.sqrt(moh / (2.0 * tp)) * (xp - qp * tp / moh)
        gauss = np.exp(0.5j * moh * xp * xp / tp)
        val = np.empty(iy.shape, dtype=complex)
        up = iy.imag >= 0
        val[up] = 0.5 * gauss[up] * w(iy[up])
        lo = ~up
        if lo.any():
            ql, xl, tl = qp[lo], xp[lo], tp[lo]
            plane = np.exp(1j * (ql * xl - ql * ql * tl / (2.0 * moh)))
            val[lo] = plane - 0.5 * gauss[lo] * w(-iy[lo])
        out[pos] = val
    return out[()] if out.ndim == 0 else out


def free_absorbing(x, k, t, consts: PhysicalConstants | None = None):
    """Free shutter with a perfectly absorbing shutter: psi = M(x, k, t)."""
    return moshinsky_m(x, k, t, consts)


def free_phase(x, k, t, alpha: float, consts: PhysicalConstants | None = None):
    """Free shutter for the initial wave exp(ikx) + exp(i alpha) exp(-ikx), x < 0.

    ``alpha = pi`` is the perfectly reflecting shutter, M(x,k,t) - M(x,-k,t).
    """
    k = np.asarray(k, dtype=float)
    return moshinsky_m(x, k, t, consts) + np.exp(1j * alpha) * moshinsky_m(x, -k, t, consts)
