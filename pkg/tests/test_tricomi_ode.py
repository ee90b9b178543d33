import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tricomilab.errors import DomainError
from tricomilab.tricomi_ode import (
    OdeParams,
    fundamental_pair,
    fundamental_pair_scaled,
    ode_oracle,
    ode_oracle_scaled,
    phi1,
    phi2,
    phi2_ratio,
    phi_of_t,
    z_of_t,
)

# Oracle anchor for m=2, lambda=1, ic=(0,1), t_end=2, recorded at local
# tolerance 1e-10 and cross-checked at 1e-12 (agreement ~1e-10).
ANCHOR_M2 = (3.9942518657498796, 6.85615658096327)


def test_phi_of_t_values():
    assert phi_of_t(2.0, 2.0) == pytest.approx(2.0, rel=1e-15)
    assert phi_of_t(1.7, 0.0) == 0.0
    assert phi_of_t(0.0, 3.2) == pytest.approx(3.2, rel=1e-15)
    with pytest.raises(DomainError):
        phi_of_t(1.0, -0.1)


def test_z_of_t_values():
    assert z_of_t(OdeParams(2.0, 1.0), 2.0) == pytest.approx(-4.0, rel=1e-15)
    assert z_of_t(OdeParams(1.3, 0.7), 0.0) == 0.0
    assert z_of_t(OdeParams(1.0, 0.5), 1.0) == pytest.approx(-2.0 / 3.0, rel=1e-15)


def test_initial_conditions_exact():
    for m in (0.0, 0.5, 1.0, 2.0):
        fe = fundamental_pair(OdeParams(m, 2.0), 0.0)
        assert (fe.v1, fe.dv1, fe.v2, fe.dv2) == (1.0, 0.0, 0.0, 1.0) or (
            fe.v1 == 1.0 and fe.dv1 == -0.0 and fe.v2 == 0.0 and fe.dv2 == 1.0
        )


def test_wronskian_fixed_samples():
    # lambda chosen so lambda*phi(t) stays below ~8: beyond that the decaying
    # mode falls under double-precision eps relative to the growing one and
    # the identity cannot be represented by the returned values
    for t, lam in ((0.5, 2.0), (1.0, 1.5), (5.0, 0.5), (20.0, 0.05)):
        for m in (0.5, 1.0, 2.0):
            fe = fundamental_pair(OdeParams(m, lam), t)
            assert abs(fe.v1 * fe.dv2 - fe.dv1 * fe.v2 - 1.0) <= 1e-8


@settings(max_examples=60, deadline=None)
@given(
    m=st.floats(min_value=0.0, max_value=3.0),
    lam=st.floats(min_value=0.1, max_value=5.0),
    frac=st.floats(min_value=0.0, max_value=1.0),
)
def test_wronskian_property(m, lam, frac):
    # sample t within the representable window lambda*phi(t) <= 8
    t_cap = ((m + 2.0) * 7.0 / (2.0 * lam)) ** (2.0 / (m + 2.0))
    t = frac * min(t_cap, 20.0)
    fe = fundamental_pair(OdeParams(m, lam), t)
    assert abs(fe.v1 * fe.dv2 - fe.dv1 * fe.v2 - 1.0) <= 1e-8


def test_wave_reduction_m0():
    lam = 1.3
    for t in (0.0, 0.5, 2.0, 7.0):
        fe = fundamental_pair(OdeParams(0.0, lam), t)
        assert fe.v1 == pytest.approx(math.cosh(lam * t), abs=1e-8)
        assert fe.v2 == pytest.approx(math.sinh(lam * t) / lam, abs=1e-8)
        assert fe.dv1 == pytest.approx(lam * math.sinh(lam * t), abs=1e-8)
        assert fe.dv2 == pytest.approx(math.cosh(lam * t), abs=1e-8)


def test_small_m_limit_continuous():
    # the Kummer route at m -> 0+ must approach the closed wave forms
    lam, t = 0.8, 2.0
    fe = fundamental_pair(OdeParams(1e-7, lam), t)
    assert fe.v1 == pytest.approx(math.cosh(lam * t), rel=1e-5)
    assert fe.v2 == pytest.approx(math.sinh(lam * t) / lam, rel=1e-5)


def test_oracle_constant_coefficient():
    y, yp = ode_oracle(OdeParams(0.0, 1.0), 1.0, (1.0, 0.0))
    assert y == pytest.approx(math.cosh(1.0), rel=1e-9)
    assert yp == pytest.approx(math.sinh(1.0), rel=1e-9)
    assert ode_oracle(OdeParams(1.0, 1.0), 0.0, (1.0, 0.0)) == (1.0, 0.0)


def test_oracle_regression_anchor():
    got = ode_oracle(OdeParams(2.0, 1.0), 2.0, (0.0, 1.0))
    assert got[0] == pytest.approx(ANCHOR_M2[0], rel=1e-9)
    assert got[1] == pytest.approx(ANCHOR_M2[1], rel=1e-9)
    tighter = ode_oracle(OdeParams(2.0, 1.0), 2.0, (0.0, 1.0), rtol=1e-12)
    assert got[0] == pytest.approx(tighter[0], rel=1e-8)


def test_fundamental_pair_matches_oracle():
    # scaled comparison stays representable even where e^{lambda phi(t)}
    # overflows; relative errors agree with the unscaled ones identically
    for m in (0.5, 1.0, 2.0, 3.0):
        for lam in (0.1, 1.0, 5.0):
            for t in (1.0, 5.0, 20.0):
                params = OdeParams(m, lam)
                fe = fundamental_pair_scaled(params, t)
                w1 = ode_oracle_scaled(params, t, (1.0, 0.0))
                w2 = ode_oracle_scaled(params, t, (0.0, 1.0))
                assert fe.v1 == pytest.approx(w1[0], rel=1e-6)
                assert fe.dv1 == pytest.approx(w1[1], rel=1e-6)
                assert fe.v2 == pytest.approx(w2[0], rel=1e-6)
                assert fe.dv2 == pytest.approx(w2[1], rel=1e-6)


def test_propagator_normalization():
    # same representability window as the Wronskian: the identity is a
    # cancellation between e^{+-lambda phi} modes, so lambda phi(s) <= 7
    rng = np.random.default_rng(7)
    for _ in range(20):
        m = rng.uniform(0.0, 3.0)
        lam = rng.uniform(0.1, 2.0)
        s_cap = ((m + 2.0) * 7.0 / (2.0 * lam)) ** (2.0 / (m + 2.0))
        s = rng.uniform(0.0, min(s_cap, 3.0))
        params = OdeParams(m, lam)
        assert phi1(s, s, params) == pytest.approx(1.0, abs=1e-8)
        assert phi2(s, s, params) == pytest.approx(0.0, abs=1e-8)


def test_propagators_reduce_to_fundamental_pair():
    params = OdeParams(1.0, 2.0)
    for t in (0.5, 2.0, 4.0):
        fe = fundamental_pair(params, t)
        assert phi1(t, 0.0, params) == pytest.approx(fe.v1, rel=1e-12)
        assert phi2(t, 0.0, params) == pytest.approx(fe.v2, rel=1e-12)


def test_propagator_vs_oracle_from_interior_time():
    # Phi1/Phi2 solve the ODE with unit data at s; integrate from s to t
    from scipy.integrate import solve_ivp

    m, lam, s, t = 1.0, 2.0, 1.0, 3.0
    params = OdeParams(m, lam)

    def rhs(tt, y):
        return [y[1], lam * lam * tt**m * y[0]]

    for ic, target in (((1.0, 0.0), phi1), ((0.0, 1.0), phi2)):
        sol = solve_ivp(rhs, (s, t), list(ic), method="DOP853", rtol=1e-10, atol=1e-12)
        assert target(t, s, params) == pytest.approx(sol.y[0, -1], rel=1e-6)


def test_phi2_ratio_diagonal_and_continuity():
    params = OdeParams(1.0, 1.0)
    assert phi2_ratio(2.0, 2.0, params) == 1.0
    assert phi2_ratio(2.0, 1.999, params) == pytest.approx(1.0, abs=1e-4)
    # continuity across the expansion/determinant switch
    t = 2.0
    below = phi2_ratio(t, t - 0.9e-6 * t, params)
    above = phi2_ratio(t, t - 1.1e-6 * t, params)
    assert below == pytest.approx(above, rel=1e-6)
    assert phi2_ratio(2.0, 0.0, params) == pytest.approx(
        phi2(2.0, 0.0, params) / 2.0, rel=1e-12
    )


def test_argument_order_errors():
    params = OdeParams(1.0, 1.0)
    with pytest.raises(DomainError):
        phi1(1.0, 2.0, params)
    with pytest.raises(DomainError):
        phi2(0.5, 1.0, params)
    with pytest.raises(DomainError):
        OdeParams(-0.5, 1.0)
    with pytest.raises(DomainError):
        OdeParams(1.0, 0.0)
