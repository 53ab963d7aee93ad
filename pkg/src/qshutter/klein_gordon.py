r"""Klein-Gordon shutter: free solution and delta barrier.

Free solution for a cut-off wave of (effective) wavenumber q, x > 0::

    psi0(x, q, t) = exp(i(q x - E_q c t)) + J_0(eta)/2 - sum_n (xi / i z)^n J_n(eta)

for c t > x and exactly zero otherwise, with

    xi = sqrt((ct + x)/(ct - x)),  eta = mu sqrt(c^2 t^2 - x^2),  z = (q + E_q)/mu.

Two evaluation routes:

* ``series`` (small eta). With ``w = xi/(i z)`` the generating function of
  J_n gives ``exp((eta/2)(w - 1/w)) = exp(i(q x - E_q c t))``, so the same
  value is also ``J_0/2 + sum_{n>=1} (-1/w)^n J_n``. Whichever of ``w`` and
  ``-1/w`` is inside the unit disc is used, so every term is bounded by
  |J_n| and the sum stops shortly after n ~ eta.
* ``contour`` (large eta, where ~eta terms would be needed). The sum is
  the loop integral

      psi0 = (1/2 pi i) \oint exp(eta sinh u) [1/2 - e^u/(e^u - w)] du

  around the essential singularity, deformed onto the two steepest-descent
  paths through the saddles u = +-i pi/2. On each path
  eta sinh u = +-i eta - tau^2 with tau real; the pole at u = log w is
  subtracted in closed form through the Faddeeva function, which keeps the
  result uniform across the classical wavefront, and the smooth remainder is
  integrated with the trapezoidal rule (exponentially convergent).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import Kinematics, PhysicalConstants, default_constants
from .errors import ConfigError, NumericalError
from .special import bessel_j_table, w as faddeeva_w

ETA_SWITCH = 20.0
_TAU_STEP = 0.25
_TAU_MAX = 7.0


@dataclass(frozen=True)
class KGSeriesParams:
    xi: np.ndarray
    eta: np.ndarray
    z: complex


@dataclass(frozen=True)
class KGDeltaCoefficients:
    b_0: float
    eps: float
    A: complex
    B: complex
    C: float
    D: float

    @property
    def front_sum(self) -> complex:
        """A + B (C + D); equals 1, which fixes the front amplitude at 1/2."""
        return self.A + self.B * (self.C + self.D)


def kg_delta_coefficients(kin: Kinematics, b_0: float,
                          consts: PhysicalConstants | None = None) -> KGDeltaCoefficients:
    consts = consts or default_constants()
    mu = consts.mu
    if not 0 <= b_0 < mu:
        raise ConfigError(f"need 0 <= b_0 < mu (b_0={b_0:g}, mu={mu:g})")
    eps = float(np.sqrt((mu - b_0) * (mu + b_0)))
    den = kin.k_r + 1j * b_0
    return KGDeltaCoefficients(
        b_0=float(b_0), eps=eps,
        A=kin.k_r / den, B=1j * b_0 / den,
        C=(eps + kin.E_r) / (2 * eps), D=(eps - kin.E_r) / (2 * eps),
    )


def effective_energy(q: complex, mu: float) -> complex:
    """E_q = sqrt(q^2 + mu^2) on the branch continuous with real q.

    Supported: real q, and q = -i b with 0 <= b < mu (E_q = +sqrt(mu^2 - b^2)).
    """
    q = complex(q)
    if q.imag == 0:
        return complex(np.hypot(q.real, mu))
    if q.real == 0 and -mu < q.imag < 0:
        b = -q.imag
        return complex(np.sqrt((mu - b) * (mu + b)))
    raise ConfigError(f"unsupported effective wavenumber {q!r}")


def kg_series_params(x, t, q: complex, consts: PhysicalConstants | None = None) -> KGSeriesParams:
    consts = consts or default_constants()
    x = np.asarray(x, dtype=float)
    ct = consts.c * np.asarray(t, dtype=float)
    d = ct - x
    if np.any(d <= 0):
        raise ConfigError("series parameters exist only inside the light cone (ct > x)")
    mu = consts.mu
    return KGSeriesParams(
        xi=np.sqrt((ct + x) / d),
        eta=mu * np.sqrt(d * (ct + x)),
        z=(q + effective_energy(q, mu)) / mu,
    )


def _series(xi, eta, z, plane, n_extra=0):
    """Bessel series, using whichever of w, -1/w lies in the closed unit disc."""
    eta_max = float(eta.max())
    n_top = int(np.ceil(eta_max + 15.0 * eta_max ** (1.0 / 3.0))) + 30 + n_extra
    jn = bessel_j_table(n_top, eta)
    wv = xi / (1j * z)
    use_w = np.abs(wv) < 1.0
    r = np.where(use_w, wv, -1.0 / wv)
    pw = np.cumprod(np.broadcast_to(r, (n_top,) + r.shape), axis=0)
    s = np.sum(pw * jn[1:], axis=0)
    j0 = jn[0]
    return np.where(use_w, plane - 0.5 * j0 - s, 0.5 * j0 + s)


def _contour(eta, wv, h=_TAU_STEP, tau_max=_TAU_MAX):
    uw = np.log(wv)
    if np.any(uw.imag > 0):
        raise NumericalError("pole above the real u axis; contour route not set up for it")
    tau = np.arange(-tau_max, tau_max + 0.5 * h, h)
    gauss = np.exp(-tau * tau)
    out = np.zeros(eta.shape, dtype=complex)
    for s in (1, -1):
        u0 = 0.5j * s * np.pi
        K = np.sqrt(2.0 * eta) * np.exp(-0.25j * s * np.pi)
        al = 0.5 * (u0 - uw)
        sh, ch = np.sinh(al), np.cosh(al)
        cw = np.sqrt(1.0 + sh * sh)
        sig = np.where(np.abs(cw - ch) <= np.abs(cw + ch), 1.0, -1.0)
        tp = -sig * K * sh
        C = np.sqrt(1.0 + (tau[None, :] / K[:, None]) ** 2)
        freg = 2.0 * sh[:, None] / (K[:, None] * C * (ch[:, None] + sig[:, None] * C))
        integral = h * (freg @ gauss)
        if s == -1:
            # residue at u = log w handled by analytic continuation of w(tau_p)
            pole = 1j * np.pi * faddeeva_w(tp)
        else:
            up = tp.imag >= 0
            pole = np.where(up, 1j * np.pi * faddeeva_w(np.where(up, tp, 0)),
                            -1j * np.pi * faddeeva_w(np.where(up, 0, -tp)))
        out += s * (-0.25 / (1j * np.pi)) * np.exp(1j * s * eta) * (integral + 2.0 * pole)
    return out


def free_kernel(x, t, q: complex, consts: PhysicalConstants | None = None,
                method: str = "auto", n_extra: int = 0, tau_step: float = _TAU_STEP,
                tau_max: float = _TAU_MAX):
    """psi0(x, q, t) with an explicit choice of evaluation route.

    ``method`` is ``"auto"``, ``"series"`` or ``"contour"``; the contour route
    needs eta > 0. Points with ct <= x are set to zero before any arithmetic.
    """
    consts = consts or default_constants()
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(x <= 0) or np.any(t < 0):
        raise ConfigError("kg_free requires x > 0 and t >= 0")
    x, t = np.broadcast_arrays(x, t)
    out = np.zeros(x.shape, dtype=complex)
    ct = consts.c * t
    inside = ct > x
    if not inside.any():
        return out[()] if out.ndim == 0 else out

    mu = consts.mu
    Eq = effective_energy(q, mu)
    xi_, cti = x[inside], ct[inside]
    d = cti - xi_
    eta = mu * np.sqrt(d * (cti + xi_))
    xi = np.sqrt((cti + xi_) / d)
    z = (q + Eq) / mu
    wv = xi / (1j * z)
    plane = np.exp(1j * (q * xi_ - Eq * cti))

    if method == "series":
        use_series = np.ones(eta.shape, dtype=bool)
    elif method == "contour":
        use_series = np.zeros(eta.shape, dtype=bool)
    elif method == "auto":
        use_series = eta < ETA_SWITCH
    else:
        raise ConfigError(f"unknown method {method!r}")

    val = np.empty(eta.shape, dtype=complex)
    if use_series.any():
        m = use_series
        val[m] = _series(xi[m], eta[m], z, plane[m], n_extra=n_extra)
    if (~use_series).any():
        m = ~use_series
        val[m] = _contour(eta[m], wv[m], h=tau_step, tau_max=tau_max)
    if not np.all(np.isfinite(val)):
        raise NumericalError("non-finite Klein-Gordon series value")
    out[inside] = val
    return out[()] if out.ndim == 0 else out


def kg_free(x, kin: Kinematics, t, consts: PhysicalConstants | None = None,
            effective_q: complex | None = None):
    """Free Klein-Gordon shutter solution; ``effective_q`` defaults to k_r."""
    q = kin.k_r if effective_q is None else effective_q
    return free_kernel(x, t, q, consts)


def kg_free_phase(x, kin: Kinematics, t, alpha: float, consts: PhysicalConstants | None = None):
    """Initial wave exp(i k_r x) + exp(i alpha) exp(-i k_r x) on x < 0."""
    return free_kernel(x, t, kin.k_r, consts) + np.exp(1j * alpha) * free_kernel(x, t, -kin.k_r, consts)


def kg_delta(x, kin: Kinematics, t, coeffs: KGDeltaCoefficients,
             consts: PhysicalConstants | None = None, alpha: float | None = None):
    """Delta barrier b_r delta(x), b_0 = b_r / 2::

        psi = A psi0(k_r) + B C psi0(-i b_0) + B D conj(psi0(-i b_0)),  ct > x

    With ``alpha`` the mirrored term for exp(-i k_r x) is added, obtained by
    k_r -> -k_r in A and B (C and D depend on E_r only).
    """
    consts = consts or default_constants()
    pb = free_kernel(x, t, -1j * coeffs.b_0, consts)
    anti = coeffs.C * pb + coeffs.D * np.conj(pb)
    psi = coeffs.A * free_kernel(x, t, kin.k_r, consts) + coeffs.B * anti
    if alpha is not None:
        den = -kin.k_r + 1j * coeffs.b_0
        psi = psi + np.exp(1j * alpha) * (
            (-kin.k_r / den) * free_kernel(x, t, -kin.k_r, consts) + (1j * coeffs.b_0 / den) * anti
        )
    return psi
