"""Non-uniform force sampling: moments, closed fidelities, MC oracle."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pushgate.constants import CA40, hbar, k_B
from pushgate.dipole_force import LaserConfig
from pushgate.thermal_nonuniform import (XiMoments, _q_poly, _tw_coeffs,
                                         fidelity_nonuniform_full,
                                         fidelity_sw_closed, fidelity_sw_floor,
                                         fidelity_tw_series, lamb_dicke,
                                         mc_nonuniform_echo, position_sigma,
                                         xi_moments_quadrature, xi_moments_sw,
                                         xi_moments_tw, xi_profile)
from pushgate.trap_dynamics import ThermalEnsemble, TrapConfig

OMEGA = 2.0 * np.pi * 1e6
TRAP = TrapConfig(OMEGA, 1e-5)


def trav(waist=2e-5, x0=None):
    x0 = 0.5 * waist if x0 is None else x0
    return LaserConfig(mode="traveling", power=0.05, waist=waist, x0=x0,
                       detuning=-1e14)


def stan(kz0=np.pi / 4.0):
    return LaserConfig(mode="standing", power=0.05, waist=2e-5, kz0=kz0,
                       detuning=-1e14)


def test_position_sigma_and_lamb_dicke():
    T = 1e-3
    assert position_sigma(CA40, TRAP, T) == pytest.approx(
        np.sqrt(k_B * T / CA40.mass) / OMEGA, rel=1e-12)
    nbar = 8.0
    eta, x, ok = lamb_dicke(CA40, TRAP, nbar)
    a = TRAP.ground_state_size(CA40)
    assert eta == pytest.approx(CA40.k_laser * a / np.sqrt(2.0), rel=1e-12)
    assert x == pytest.approx(eta ** 2 * nbar, rel=1e-12)
    # (k sigma)^2 = 2 eta^2 nbar at k_B T = nbar hbar omega
    sigma = position_sigma(CA40, TRAP, nbar * hbar * OMEGA / k_B)
    assert (CA40.k_laser * sigma) ** 2 == pytest.approx(2.0 * x, rel=1e-12)
    assert not lamb_dicke(CA40, TRAP, 1e4)[2]


def test_xi_profile_normalization_and_zeros():
    laser = trav(x0=7e-6)
    assert xi_profile(laser, CA40, 1.3, 0.0) == pytest.approx(1.3, rel=1e-12)
    assert xi_profile(laser, CA40, 1.3, 7e-6) == 0.0
    laser = stan(kz0=0.6)
    assert xi_profile(laser, CA40, 1.3, 0.0) == pytest.approx(1.3, rel=1e-12)
    # displacing by kx = kz0 puts the ion on the node
    k = CA40.k_laser
    assert abs(xi_profile(laser, CA40, 1.3, 0.6 / k)) < 1e-12


@given(R=st.floats(0.3, 3.0))
def test_tw_coefficient_identities(R):
    A, B = _tw_coeffs(R)
    gap = (R - 1.0 / R) ** 2
    assert A[4] - 2.0 * A[2] == pytest.approx(4.0 * gap, abs=1e-9)
    assert A[6] - A[2] - A[4] == pytest.approx(8.0 * gap, abs=1e-9)
    # variance r^4 coefficient is twice the quartic geometry polynomial
    assert B[4] - 2.0 * B[2] - A[2] ** 2 == pytest.approx(
        2.0 * _q_poly(R), rel=1e-9)


def test_q_poly_minimum_at_optimal_offset():
    assert _q_poly(1.0) == pytest.approx(4.0, rel=1e-12)


def test_tw_series_moments_match_quadrature():
    xi0 = 1.2
    w = 2e-5
    for x0, r in ((0.5 * w, 0.05), (0.35 * w, 0.08), (0.8 * w, 0.03)):
        sigma = 0.5 * r * w
        series = xi_moments_tw(xi0, w, x0, sigma)
        quadr = xi_moments_quadrature(trav(waist=w, x0=x0), CA40, xi0, sigma)
        _, B = _tw_coeffs(2.0 * x0 / w)
        for n, s, q in ((2, series.m2, quadr.m2), (4, series.m4, quadr.m4),
                        (6, series.m6, quadr.m6), (8, series.m8, quadr.m8)):
            tol = max(200.0 * (1.0 + abs(B[n])) * r ** 6, 1e-9)
            assert abs(s - q) <= tol * abs(q)


def test_tw_moment_guards():
    with pytest.raises(ValueError):
        xi_moments_tw(1.0, 2e-5, 0.0, 1e-7)
    with pytest.warns(UserWarning, match="series moments inaccurate"):
        xi_moments_tw(1.0, 2e-5, 1e-5, 0.2 * 2e-5)


def test_sw_moments_match_quadrature_exactly():
    xi0 = 1.1
    k = CA40.k_laser
    for kz0, ks in ((np.pi / 4.0, 0.12), (0.6, 0.45)):
        sigma = ks / k
        closed = xi_moments_sw(xi0, kz0, k, sigma)
        quadr = xi_moments_quadrature(stan(kz0=kz0), CA40, xi0, sigma)
        for s, q in ((closed.m2, quadr.m2), (closed.m4, quadr.m4),
                     (closed.m6, quadr.m6), (closed.m8, quadr.m8)):
            assert s == pytest.approx(q, rel=1e-8)


def test_sw_moment_node_guard():
    with pytest.raises(ValueError):
        xi_moments_sw(1.0, 0.5 * np.pi, CA40.k_laser, 1e-8)


@given(kz0=st.floats(0.1, 1.45), ks=st.floats(0.01, 2.0))
@settings(max_examples=60, deadline=None)
def test_sw_moments_satisfy_power_inequalities(kz0, ks):
    m = xi_moments_sw(1.0, kz0, CA40.k_laser, ks / CA40.k_laser)
    # Cauchy-Schwarz on xi^2: variance and cross-moment bounds
    assert m.m4 >= m.m2 ** 2 * (1.0 - 1e-12)
    assert m.m8 >= m.m4 ** 2 * (1.0 - 1e-12)
    assert m.m6 * m.m2 >= m.m4 ** 2 * (1.0 - 1e-12)


def test_full_fidelity_reduces_to_uniform_echo():
    xi0 = 1.2
    uniform = XiMoments(m2=xi0 ** 2, m4=xi0 ** 4, m6=xi0 ** 6, m8=xi0 ** 8,
                        xi0=xi0)
    for theta0, beta, r in ((np.pi / 2.0, 10.0, 1e-3), (0.7, 4.0, 5e-3)):
        f = fidelity_nonuniform_full(theta0, uniform, r, beta)
        assert 1.0 - f == pytest.approx((6.0 * theta0 * beta) ** 2 * r ** 4,
                                        rel=1e-12)


def test_tw_series_fidelity_matches_master_form():
    # with the Coulomb ratio a/d negligible the series form and the master
    # form with series moments agree through fourth order in the spread;
    # the master keeps squares of the truncated moments, so the residual is
    # the O(r^6) cross term ~ 2 A2 B2 r^6
    a = TRAP.ground_state_size(CA40)
    w = 2e-6
    for theta0, beta, x0 in ((np.pi / 2.0, 10.0, 0.5 * w),
                             (np.pi / 2.0, 10.0, 0.35 * w),
                             (0.9, 25.0, 0.7 * w)):
        sigma = a * np.sqrt(beta)
        r = 2.0 * sigma / w
        series = fidelity_tw_series(theta0, a, 1.0, w, x0, beta)
        moments = xi_moments_tw(1.0, w, x0, sigma)
        master = fidelity_nonuniform_full(theta0, moments, a / 1.0, beta)
        assert 1.0 - series == pytest.approx(1.0 - master, rel=6.0 * r ** 2)


def test_tw_series_geometric_term_vanishes_at_optimum():
    a = TRAP.ground_state_size(CA40)
    w = 2e-6
    best = 1.0 - fidelity_tw_series(np.pi / 2.0, a, 1e-5, w, 0.5 * w, 10.0)
    for x0 in (0.3 * w, 0.45 * w, 0.55 * w, 0.8 * w):
        assert 1.0 - fidelity_tw_series(np.pi / 2.0, a, 1e-5, w, x0, 10.0) > best


def test_sw_fidelity_monotone_with_floor():
    vals = [fidelity_sw_closed(np.pi / 2.0, ks2)
            for ks2 in (0.0, 1e-3, 1e-2, 0.1, 1.0, 10.0)]
    assert vals[0] == pytest.approx(1.0, abs=1e-15)
    for lo, hi in zip(vals[1:], vals):
        assert lo < hi
    floor = 1.0 - np.pi ** 2 / 128.0
    assert vals[-1] == pytest.approx(floor, rel=1e-9)
    assert fidelity_sw_floor(np.pi / 2.0, np.pi / 4.0) == pytest.approx(
        floor, rel=1e-12)
    assert floor == pytest.approx(0.922894, abs=5e-7)
    # off-optimum offsets hit a lower floor
    assert fidelity_sw_floor(np.pi / 2.0, 0.5) < floor
    with pytest.raises(ValueError):
        fidelity_sw_floor(np.pi / 2.0, 0.5 * np.pi)


def test_mc_nonuniform_echo_matches_master():
    a = TRAP.ground_state_size(CA40)
    trap = TrapConfig(OMEGA, a / 1e-3)
    ens = ThermalEnsemble.from_nbar(10.0, OMEGA, seed=0)
    sigma = position_sigma(CA40, trap, ens.T)
    laser = trav(waist=2e-6)
    xi0 = 1.2
    moments = xi_moments_quadrature(laser, CA40, xi0, sigma)
    want = 1.0 - fidelity_nonuniform_full(np.pi / 2.0, moments, 1e-3, 10.0)
    mean, sem = mc_nonuniform_echo(CA40, trap, laser, ens, np.pi / 2.0, xi0,
                                   20000, seed=11)
    assert abs(mean - want) <= 3.0 * sem
    assert sem < 0.1 * want
    # deterministic across worker counts
    again = mc_nonuniform_echo(CA40, trap, laser, ens, np.pi / 2.0, xi0,
                               8192, seed=11, workers=1)
    split = mc_nonuniform_echo(CA40, trap, laser, ens, np.pi / 2.0, xi0,
                               8192, seed=11, workers=3)
    assert again == split
