"""Faddeeva function and Bessel J sequences.

``w(z) = exp(-z^2) erfc(-i z)`` gives the scaled complementary error function
``exp(y^2) erfc(y) = w(i y)`` without overflow. In the upper half-plane it is
bounded and is delegated to ``scipy.special.wofz``; the lower half-plane is
routed through ``w(z) = 2 exp(-z^2) - w(-z)``.

``bessel_j_seq`` is Miller's downward recurrence normalised by the sum rule
``J_0 + 2 sum_k J_2k = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import wofz as _wofz

from .errors import ConfigError

_EPS = np.finfo(float).eps
# Published accuracy of the upper-half-plane kernel (relative).
_UPPER_REL_ERR = 4e-14


@dataclass(frozen=True)
class FaddeevaResult:
    value: complex | np.ndarray
    est_rel_err: float | np.ndarray


def w(z):
    """Faddeeva function on arrays, no error estimate."""
    z = np.asarray(z, dtype=complex)
    lower = z.imag < 0
    if not lower.any():
        return _wofz(z)
    out = np.empty_like(z)
    out[~lower] = _wofz(z[~lower])
    zl = z[lower]
    out[lower] = 2.0 * np.exp(-zl * zl) - _wofz(-zl)
    return out


def faddeeva(z) -> FaddeevaResult:
    """Faddeeva function with a relative error estimate.

    Parameters
    ----------
    z : complex or array_like
        Finite argument(s).

    Returns
    -------
    FaddeevaResult
        ``value`` has the shape of ``z``. For ``Im z < 0`` the estimate
        accounts for the cancellation in ``2 exp(-z^2) - w(-z)`` and for the
        rounding of the exponent ``z^2``.
    """
    za = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(za)):
        raise ConfigError("faddeeva argument must be finite")
    val = w(za)
    err = np.full(za.shape, _UPPER_REL_ERR)
    lower = za.imag < 0
    if lower.any():
        zl = za[lower]
        big = np.abs(2.0 * np.exp(-zl * zl))
        small = np.abs(_wofz(-zl))
        absval = np.abs(val[lower])
        abs_err = big * _EPS * (2.0 + 2.0 * np.abs(zl) ** 2) + small * _UPPER_REL_ERR
        with np.errstate(divide="ignore", invalid="ignore"):
            err[lower] = np.where(absval > 0, abs_err / absval, np.inf)
    if np.ndim(z) == 0:
        return FaddeevaResult(complex(val), float(err))
    return FaddeevaResult(val, err)


def miller_start(n_max: int, x: float) -> int:
    """Starting order for the downward recurrence (even)."""
    top = max(n_max, math.ceil(x)) + max(20, math.ceil(15.0 * x ** (1.0 / 3.0)))
    return top + (top % 2)


def bessel_j_table(n_max: int, x) -> np.ndarray:
    """J_0..J_n_max at each point of ``x``; shape ``(n_max + 1,) + x.shape``.

    Vectorised over ``x``: the recurrence runs once from the start order
    required by ``max(x)``.
    """
    x = np.asarray(x, dtype=float)
    if n_max < 0:
        raise ConfigError("n_max must be >= 0")
    if not np.all(np.isfinite(x)) or np.any(x < 0):
        raise ConfigError("Bessel argument must be finite and non-negative")
    shape = x.shape
    xf = x.ravel()
    out = np.zeros((n_max + 1, xf.size))
    zero = xf == 0
    out[0, zero] = 1.0
    xs = xf[~zero]
    if xs.size == 0:
        return out.reshape((n_max + 1,) + shape)

    top = miller_start(n_max, float(xs.max()))
    inv = 2.0 / xs
    j_up = np.zeros_like(xs)           # J_{n+1}
    j_n = np.full_like(xs, 1e-280)      # J_n, arbitrary seed
    norm = np.zeros_like(xs)
    sub = np.zeros((n_max + 1, xs.size))
    if top <= n_max:
        sub[top] = j_n
    for n in range(top, 0, -1):
        j_dn = n * inv * j_n - j_up
        j_up, j_n = j_n, j_dn
        m = n - 1
        if m <= n_max:
            sub[m] = j_n
        if m % 2 == 0 and m > 0:
            norm += 2.0 * j_n
        big = np.abs(j_n) > 1e250
        if big.any():
            j_n[big] *= 1e-250
            j_up[big] *= 1e-250
            norm[big] *= 1e-250
            sub[m:, big] *= 1e-250
    norm += j_n
    sub /= norm
    out[:, ~zero] = sub
    return out.reshape((n_max + 1,) + shape)


def bessel_j_seq(n_max: int, x: float) -> np.ndarray:
    """J_0(x), ..., J_n_max(x) for a single real ``x >= 0``."""
    if not math.isfinite(x) or x < 0:
        raise ConfigError(f"Bessel argument must be finite and >= 0, got {x!r}")
    return bessel_j_table(n_max, np.array([float(x)]))[:, 0]
