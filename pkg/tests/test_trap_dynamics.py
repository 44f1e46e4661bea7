"""Trap and trajectory tests: stretch, mode corrections, ODE oracle, adiabaticity."""

import numpy as np
import pytest

from pushgate.constants import CA40, hbar, k_B
from pushgate.trap_dynamics import (ForcePulse, MotionState, ThermalEnsemble,
                                    TrapConfig, adiabaticity_metric,
                                    adiabaticity_metric_quadrature,
                                    analytic_trajectory, coulomb_parameter,
                                    equilibrium_stretch,
                                    free_oscillation_energy_drift,
                                    frequency_correction, ode_trajectory)

OMEGA = 2.0 * np.pi * 1e6
TRAP = TrapConfig(OMEGA, 1e-5)


def test_ground_state_size_reference_value():
    # sqrt(hbar / m omega) for 40Ca+ at omega/2pi = 1 MHz
    assert TRAP.ground_state_size(CA40) == pytest.approx(1.5897e-8, rel=1e-4)


def test_trap_config_rejects_nonpositive():
    with pytest.raises(ValueError):
        TrapConfig(0.0, 1e-5)
    with pytest.raises(ValueError):
        TrapConfig(OMEGA, -1.0)


def test_coulomb_parameter_reference_value():
    # eps = 4 ell / (m omega^2 d^3), 40Ca+ at 1 MHz and d = 10 um
    eps = coulomb_parameter(CA40, TRAP)
    direct = 4.0 * CA40.ell / (CA40.mass * OMEGA ** 2 * (1e-5) ** 3)
    assert eps == pytest.approx(direct, rel=1e-14)
    assert eps == pytest.approx(0.35190, rel=1e-4)
    # scaling: eps ~ 1/(omega^2 d^3)
    assert coulomb_parameter(CA40, TrapConfig(2 * OMEGA, 1e-5)) == pytest.approx(eps / 4)
    assert coulomb_parameter(CA40, TrapConfig(OMEGA, 2e-5)) == pytest.approx(eps / 8)


def test_equilibrium_stretch_solves_cubic():
    for d in (3e-6, 1e-5, 1e-4):
        trap = TrapConfig(OMEGA, d)
        eps = coulomb_parameter(CA40, trap)
        dl = equilibrium_stretch(CA40, trap)
        # force balance: m w^2 Delta = ell / (d + Delta)^2, both ions moving
        assert dl * (d + dl) ** 2 == pytest.approx(0.5 * eps * d ** 3, rel=1e-12)


def test_equilibrium_stretch_small_coupling_limit():
    trap = TrapConfig(OMEGA, 1e-4)   # eps ~ 3.5e-4
    eps = coulomb_parameter(CA40, trap)
    dl = equilibrium_stretch(CA40, trap)
    assert dl == pytest.approx(0.5 * eps * trap.d, rel=2.0 * eps)


def test_frequency_corrections():
    ax, tr = frequency_correction(0.3519)
    assert ax == pytest.approx(np.sqrt(1.3519), rel=1e-12)
    assert tr == pytest.approx(np.sqrt(1.0 - 0.17595), rel=1e-12)
    with pytest.raises(ValueError):
        frequency_correction(2.0)


def test_force_pulse_envelope():
    p = ForcePulse(xi=1.0, tau=2e-7)
    assert p.envelope(0.0) == 1.0
    assert p.envelope(2e-7) == pytest.approx(np.exp(-1.0))
    assert p.t_start == -6.0 * p.tau and p.t_stop == 6.0 * p.tau
    # derivative consistency
    h = 1e-12
    t = 1.3e-7
    fd = (p.envelope(t + h) - p.envelope(t - h)) / (2 * h)
    assert p.envelope_dot(t) == pytest.approx(fd, rel=1e-6)
    with pytest.raises(ValueError):
        ForcePulse(xi=1.0, tau=2e-7, window=2.0)
    with pytest.raises(ValueError):
        ForcePulse(xi=1.0, tau=-1.0)


def test_motion_state_rejects_negative_energy():
    with pytest.raises(ValueError):
        MotionState(E1=-1e-30, E2=0.0)


def test_thermal_ensemble_units():
    ens = ThermalEnsemble(T=1e-3)
    assert ens.kT_over_hw(OMEGA) == pytest.approx(k_B * 1e-3 / (hbar * OMEGA))
    nbar = 7.3
    assert ThermalEnsemble.from_nbar(nbar, OMEGA).kT_over_hw(OMEGA) == pytest.approx(nbar)
    with pytest.raises(ValueError):
        ThermalEnsemble(T=-1.0)


def test_analytic_trajectory_matches_ode():
    # criterion backing at module scale: omega tau = 10, thermal motion on
    tau = 10.0 / OMEGA
    pulse = ForcePulse(xi=1.2, tau=tau)
    a = TRAP.ground_state_size(CA40)
    E = 12.0 * hbar * OMEGA
    for psi in (0.0, 1.1):
        ana = analytic_trajectory(pulse, TRAP, E, psi, CA40, n=801)
        ode = ode_trajectory(pulse, TRAP, E, psi, CA40, n=801)
        assert np.max(np.abs(ana["x"] - ode["x"])) < 1e-9 * a


def test_trajectory_decomposition():
    tau = 8.0 / OMEGA
    pulse = ForcePulse(xi=0.9, tau=tau)
    a = TRAP.ground_state_size(CA40)
    out = analytic_trajectory(pulse, TRAP, 0.0, 0.0, CA40, n=401)
    # cold ion: x = xbar - delta; the peak sits near a*xi
    assert out["Delta"] == pytest.approx(0.0, abs=1e-30)
    k = np.argmax(out["xbar"])
    assert out["xbar"][k] == pytest.approx(a * 0.9, rel=1e-12)
    # during the pulse the lag tracks xbar''/omega^2, scale 2 xi a/(w tau)^2
    assert np.max(np.abs(out["delta"])) < 3.0 * a * 0.9 * 2.0 / (OMEGA * tau) ** 2
    # after the pulse only the exponentially small ringing survives
    ring = a * 0.9 * np.sqrt(np.pi) * OMEGA * tau * np.exp(-(OMEGA * tau / 2) ** 2)
    assert abs(out["delta"][-1]) < 2.0 * ring


def test_free_oscillation_energy_drift():
    assert free_oscillation_energy_drift(TRAP, n_periods=100) < 1e-9


def test_adiabaticity_closed_vs_quadrature():
    for wt in (3.0, 5.0, 7.0):
        pulse = ForcePulse(xi=1.0, tau=wt / OMEGA, window=8.0)
        closed = adiabaticity_metric(pulse, OMEGA)
        oracle = adiabaticity_metric_quadrature(pulse, OMEGA)
        assert closed == pytest.approx(oracle, rel=1e-6)


def test_adiabaticity_reference_value():
    pulse = ForcePulse(xi=1.0, tau=5.0 / OMEGA)
    assert adiabaticity_metric(pulse, OMEGA) == pytest.approx(1.93e-3, rel=1e-2)
