"""Fundamental system of the degenerate oscillator y'' = lambda^2 t^m y.

``fundamental_pair`` builds the normalized solutions V1, V2 (V1(0)=1,
V1'(0)=0, V2(0)=0, V2'(0)=1) from the confluent hypergeometric kernel via

    V1(t) = e^{-z/2} M(alpha, gamma_k; z),   z = -2 lambda phi(t),
    V2(t) = e^{-z/2} t M(1+alpha-gamma_k, 2-gamma_k; z),

with alpha = m/(2(m+2)), gamma_k = m/(m+2) and phi(t) = 2 t^{(m+2)/2}/(m+2).
The V2 normalization uses the identity c_m z^{1-gamma_k} = t, which keeps
all arithmetic real.  ``ode_oracle`` is an independent check: adaptive
high-order integration of the same equation in exponentially scaled
variables (w = e^{-lambda phi} y), which stays O(1) where y grows like
e^{lambda phi(t)}.

Two-point propagators Phi1, Phi2 (solutions with unit data at time s) are
assembled as 2x2 determinants of the pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import solve_ivp

from .errors import DomainError
from .specfun import kummer_m, kummer_m_deriv


@dataclass(frozen=True)
class OdeParams:
    """Degeneracy exponent m >= 0 and frequency lambda > 0.

    m = 0 is the constant-speed (wave) reduction with cosh/sinh solutions.
    """

    m: float
    lam: float

    def __post_init__(self):
        if not self.m >= 0:
            raise DomainError(f"m must be >= 0, got {self.m}")
        if not self.lam > 0:
            raise DomainError(f"lambda must be > 0, got {self.lam}")


@dataclass(frozen=True)
class FundamentalEval:
    """Values of (V1, V1', V2, V2') at time t; Wronskian v1*dv2 - dv1*v2 = 1.

    For evaluations produced by ``fundamental_pair_scaled`` every field
    carries the factor e^{-lambda phi(t)} and the Wronskian identity holds
    with right-hand side e^{-2 lambda phi(t)}.
    """

    v1: float
    dv1: float
    v2: float
    dv2: float
    t: float


def phi_of_t(m: float, t: float) -> float:
    """Degenerate characteristic distance phi(t) = 2 t^{(m+2)/2} / (m+2)."""
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    return 2.0 / (m + 2.0) * t ** ((m + 2.0) / 2.0)


def z_of_t(params: OdeParams, t: float) -> float:
    """Kummer argument z = -2 lambda phi(t) <= 0."""
    return -2.0 * params.lam * phi_of_t(params.m, t)


def _kummer_params(m: float):
    alpha = m / (2.0 * (m + 2.0))
    gamma_k = m / (m + 2.0)
    return alpha, gamma_k


def _pair_from_kummer(params: OdeParams, t: float, scaled: bool) -> FundamentalEval:
    m, lam = params.m, params.lam
    if m == 0.0:
        # wave reduction: V1 = cosh(lam t), V2 = sinh(lam t)/lam
        x = lam * t
        if scaled:
            em = math.exp(-2.0 * x)
            cosh_s, sinh_s = 0.5 * (1.0 + em), 0.5 * (1.0 - em)
        else:
            cosh_s, sinh_s = math.cosh(x), math.sinh(x)
        return FundamentalEval(cosh_s, lam * sinh_s, sinh_s / lam, cosh_s, t)
    alpha, gamma_k = _kummer_params(m)
    z = z_of_t(params, t)
    dz = -2.0 * lam * t ** (m / 2.0)
    m1 = kummer_m(alpha, gamma_k, z)
    dm1 = kummer_m_deriv(alpha, gamma_k, z)
    m2 = kummer_m(1.0 + alpha - gamma_k, 2.0 - gamma_k, z)
    dm2 = kummer_m_deriv(1.0 + alpha - gamma_k, 2.0 - gamma_k, z)
    # scaled quantities carry e^{z/2} = e^{-lambda phi(t)}
    exp_fac = 1.0 if scaled else math.exp(-0.5 * z)
    v1 = exp_fac * m1
    dv1 = exp_fac * dz * (dm1 - 0.5 * m1)
    v2 = exp_fac * t * m2
    dv2 = exp_fac * (m2 + t * dz * (dm2 - 0.5 * m2))
    return FundamentalEval(v1, dv1, v2, dv2, t)


def fundamental_pair(params: OdeParams, t: float) -> FundamentalEval:
    """V1, V1', V2, V2' at time t; exact initial data (1,0,0,1) at t = 0.

    Values grow like e^{lambda phi(t)} and overflow to inf once
    lambda phi(t) exceeds ~709; use ``fundamental_pair_scaled`` there.
    """
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    return _pair_from_kummer(params, t, scaled=False)


def fundamental_pair_scaled(params: OdeParams, t: float) -> FundamentalEval:
    """The fundamental pair premultiplied by e^{-lambda phi(t)} (bounded)."""
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    return _pair_from_kummer(params, t, scaled=True)


def phi1(t: float, s: float, params: OdeParams) -> float:
    """Propagator with Phi1(s,s)=1, d/dt Phi1(s,s)=0, as a 2x2 determinant."""
    if t < s:
        raise DomainError(f"need t >= s, got t={t} < s={s}")
    at_t = fundamental_pair(params, t)
    at_s = fundamental_pair(params, s)
    return at_t.v1 * at_s.dv2 - at_t.v2 * at_s.dv1


def phi2(t: float, s: float, params: OdeParams) -> float:
    """Propagator with Phi2(s,s)=0, d/dt Phi2(s,s)=1."""
    if t < s:
        raise DomainError(f"need t >= s, got t={t} < s={s}")
    at_t = fundamental_pair(params, t)
    at_s = fundamental_pair(params, s)
    return at_s.v1 * at_t.v2 - at_s.v2 * at_t.v1


# below this separation the determinant cancels more than the local
# expansion error of the (t-s)-series for Phi2/(t-s)
_RATIO_SWITCH = 1e-6


def phi2_ratio(t: float, s: float, params: OdeParams) -> float:
    """Phi2(t,s)/(t-s), continuous through the diagonal (limit 1 at s=t)."""
    if t < s:
        raise DomainError(f"need t >= s, got t={t} < s={s}")
    dt = t - s
    if dt < _RATIO_SWITCH * max(1.0, t):
        if s == 0.0:
            if t == 0.0:
                return 1.0
            return phi2(t, 0.0, params) / t  # = V2(t)/t, no cancellation
        # Phi2(t,s) = (t-s) + lam^2 s^m (t-s)^3/6 + lam^2 m s^{m-1} (t-s)^4/24 + ...
        lam2 = params.lam**2
        corr = lam2 * s ** params.m * dt * dt / 6.0
        if s > 0 and params.m > 0:
            corr += lam2 * params.m * s ** (params.m - 1.0) * dt**3 / 24.0
        return 1.0 + corr
    return phi2(t, s, params) / dt


def _scaled_rhs(m: float, lam: float):
    """Right side of the scaled first-order system for (w, v) = e^{-lam phi}(y, y')."""

    def rhs(t, wv):
        w, v = wv
        c = lam * t ** (m / 2.0)
        return [v - c * w, lam * lam * t**m * w - c * v]

    return rhs


def ode_oracle_scaled(
    params: OdeParams,
    t_end: float,
    ic: tuple[float, float],
    rtol: float = 1e-10,
) -> tuple[float, float]:
    """Integrate the scaled system; returns e^{-lambda phi(t_end)} (y, y').

    Initial data coincide with the unscaled data because phi(0) = 0.
    Independent of the hypergeometric evaluation path.
    """
    if t_end < 0:
        raise DomainError(f"t_end must be >= 0, got {t_end}")
    if t_end == 0:
        return (float(ic[0]), float(ic[1]))
    sol = solve_ivp(
        _scaled_rhs(params.m, params.lam),
        (0.0, t_end),
        [float(ic[0]), float(ic[1])],
        method="DOP853",
        rtol=rtol,
        atol=rtol,
        dense_output=False,
    )
    if not sol.success:
        raise DomainError(f"oracle integration failed: {sol.message}")
    return (float(sol.y[0, -1]), float(sol.y[1, -1]))


def ode_oracle(
    params: OdeParams,
    t_end: float,
    ic: tuple[float, float],
    rtol: float = 1e-10,
) -> tuple[float, float]:
    """(y, y') at t_end for y'' = lambda^2 t^m y from data (y, y')(0) = ic.

    Overflows to inf once lambda phi(t_end) exceeds ~709; compare against
    ``ode_oracle_scaled``/``fundamental_pair_scaled`` in that regime.
    """
    w, v = ode_oracle_scaled(params, t_end, ic, rtol)
    growth = params.lam * phi_of_t(params.m, t_end)
    scale = math.exp(growth) if growth < 709.0 else math.inf
    return (w * scale, v * scale)
