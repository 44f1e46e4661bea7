"""Push-beam tests: Rabi frequency, push amplitude, scattering budget."""

import numpy as np
import pytest

from pushgate.constants import CA40, c_light, hbar
from pushgate.dipole_force import (LaserConfig, check_weak_coupling,
                                   photons_scattered,
                                   photons_scattered_power_form,
                                   pulse_for_gate, push_displacement_limit,
                                   push_displacement_ok, rabi_sq,
                                   scattering_fidelity, xi_amplitude)
from pushgate.phase_engine import theta_lead
from pushgate.trap_dynamics import ForcePulse, TrapConfig

OMEGA = 2.0 * np.pi * 1e6
TRAP = TrapConfig(OMEGA, 1e-5)
DET = -2.0 * np.pi * 1e13


def trav(power=0.05, waist=2e-5, x0=None, detuning=DET):
    x0 = 0.5 * waist if x0 is None else x0
    return LaserConfig(mode="traveling", power=power, waist=waist, x0=x0,
                       detuning=detuning)


def stan(power=0.05, waist=2e-5, kz0=np.pi / 4.0, detuning=DET, k_eff=None):
    return LaserConfig(mode="standing", power=power, waist=waist, kz0=kz0,
                       detuning=detuning, k_eff=k_eff)


def test_rabi_sq_forms():
    laser = trav()
    k = CA40.k_laser
    direct = 12.0 * CA40.gamma * laser.power / (hbar * c_light * k ** 3
                                                * laser.waist ** 2)
    assert rabi_sq(CA40, laser) == pytest.approx(direct, rel=1e-12)
    # same thing through the peak intensity I = 2 P / (pi w^2)
    intensity = 2.0 * laser.power / (np.pi * laser.waist ** 2)
    alt = 6.0 * np.pi * CA40.gamma * intensity / (hbar * c_light * k ** 3)
    assert rabi_sq(CA40, laser) == pytest.approx(alt, rel=1e-12)


def test_laser_config_validation():
    with pytest.raises(ValueError):
        LaserConfig(mode="pulsed", power=1.0, waist=1e-5)
    with pytest.raises(ValueError):
        LaserConfig(mode="traveling", power=0.0, waist=1e-5, x0=1e-6)
    with pytest.raises(ValueError):
        LaserConfig(mode="traveling", power=1.0, waist=-1e-5, x0=1e-6)
    with pytest.raises(ValueError):
        LaserConfig(mode="traveling", power=1.0, waist=1e-5, x0=0.0)
    with pytest.raises(ValueError):
        LaserConfig(mode="standing", power=1.0, waist=1e-5, kz0=0.5 * np.pi)


def test_xi_amplitude_formulas():
    a = TRAP.ground_state_size(CA40)
    laser = trav(x0=7e-6)
    o2 = rabi_sq(CA40, laser)
    want = (a * (-7e-6) * o2 * np.exp(-2.0 * (7e-6 / 2e-5) ** 2)
            / (OMEGA * DET * (2e-5) ** 2))
    assert xi_amplitude(CA40, TRAP, laser) == pytest.approx(want, rel=1e-12)

    laser = stan(kz0=0.6)
    o2 = rabi_sq(CA40, laser)
    k = CA40.k_laser
    want = a * k * o2 * np.sin(1.2) / (OMEGA * DET)
    assert xi_amplitude(CA40, TRAP, laser) == pytest.approx(want, rel=1e-12)


def test_xi_optima():
    w = 2e-5
    best = abs(xi_amplitude(CA40, TRAP, trav(x0=0.5 * w)))
    for x0 in np.linspace(0.05, 1.5, 57) * w:
        if abs(x0 - 0.5 * w) < 1e-9:
            continue
        assert abs(xi_amplitude(CA40, TRAP, trav(x0=x0))) < best
    best = abs(xi_amplitude(CA40, TRAP, stan(kz0=np.pi / 4.0)))
    for kz0 in np.linspace(0.05, 1.5, 57):
        if abs(kz0 - np.pi / 4.0) < 1e-9:
            continue
        assert abs(xi_amplitude(CA40, TRAP, stan(kz0=kz0))) < best


def test_xi_sign_follows_detuning():
    red = xi_amplitude(CA40, TRAP, trav())
    blue = xi_amplitude(CA40, TRAP, trav(detuning=-DET))
    assert red > 0 and blue < 0 and red == pytest.approx(-blue, rel=1e-12)


def test_pulse_for_gate_hits_angle():
    for theta0 in (np.pi / 2.0, np.pi / 7.0):
        pulse = pulse_for_gate(CA40, TRAP, trav(), theta0=theta0)
        assert theta_lead(pulse, TRAP, CA40) == pytest.approx(theta0, rel=1e-12)


def test_weak_coupling_guard():
    hot = trav(power=10.0, detuning=-2.0 * np.pi * 1e10)
    with pytest.raises(ValueError, match="weakly coupled"):
        check_weak_coupling(CA40, hot)
    with pytest.raises(ValueError):
        xi_amplitude(CA40, TRAP, hot)
    xi_amplitude(CA40, TRAP, hot, check=False)  # guard skipped on request
    with pytest.raises(ValueError, match="not set"):
        check_weak_coupling(CA40, trav(detuning=None))


def test_scattering_report_relations():
    laser = trav()
    pulse = pulse_for_gate(CA40, TRAP, laser)
    rep = photons_scattered(CA40, TRAP, laser, pulse)
    o2_ion = rabi_sq(CA40, laser) * np.exp(-2.0 * (laser.x0 / laser.waist) ** 2)
    assert rep.rate_peak == pytest.approx(
        CA40.gamma * o2_ion / (4.0 * DET ** 2), rel=1e-12)
    assert rep.n_photons == pytest.approx(
        2.0 * rep.rate_peak * pulse.tau * np.sqrt(np.pi), rel=1e-12)
    assert rep.fidelity == pytest.approx(np.exp(-rep.n_photons), rel=1e-12)
    assert rep.infidelity == pytest.approx(-np.expm1(-rep.n_photons), rel=1e-12)


def test_quadrature_tracks_closed_count():
    # wide beam, small push: trajectory correction far below a percent
    laser = trav()
    rep = photons_scattered(CA40, TRAP, laser, pulse_for_gate(CA40, TRAP, laser))
    assert abs(rep.n_quadrature / rep.n_photons - 1.0) < 1e-3
    # tight beam, order-unity push: percent-level, pulled toward the beam
    # centre by the red detuning so the moving ion scatters more
    laser = trav(power=0.1, waist=2e-6)
    rep = photons_scattered(CA40, TRAP, laser, pulse_for_gate(CA40, TRAP, laser))
    drift = rep.n_quadrature / rep.n_photons - 1.0
    assert 1e-3 < drift < 0.05


def test_power_form_matches_time_integral():
    for laser in (trav(), trav(power=0.2, waist=1e-5, x0=3e-6),
                  stan(), stan(kz0=0.5, power=0.01)):
        for theta0 in (np.pi / 2.0, np.pi / 3.0):
            pulse = pulse_for_gate(CA40, TRAP, laser, theta0=theta0)
            rep = photons_scattered(CA40, TRAP, laser, pulse)
            want = photons_scattered_power_form(CA40, TRAP, laser, theta0=theta0)
            assert rep.n_photons == pytest.approx(want, rel=1e-9)


def test_scattering_detuning_invariant():
    base = None
    for det in (-2.0 * np.pi * 1e13, -2.0 * np.pi * 4e13, 2.0 * np.pi * 2e13):
        laser = trav(detuning=det)
        rep = photons_scattered(CA40, TRAP, laser, pulse_for_gate(CA40, TRAP, laser))
        if base is None:
            base = rep.n_photons
        assert rep.n_photons == pytest.approx(base, rel=1e-10)


def test_mode_ratio_at_optimal_offsets():
    # with x0 = w/2, k z0 = pi/4 and the optical standing wave, the
    # traveling beam scatters 8 sqrt(e) pi^2 (w/lambda)^2 times more photons
    # for the same gate angle
    w = 2e-5
    n_t = photons_scattered_power_form(CA40, TRAP, trav(waist=w))
    n_s = photons_scattered_power_form(CA40, TRAP, stan(waist=w))
    want = 8.0 * np.sqrt(np.e) * np.pi ** 2 * (w / CA40.wavelength) ** 2
    assert n_t / n_s == pytest.approx(want, rel=1e-9)
    # and the count scales linearly with the target angle
    n_2 = photons_scattered_power_form(CA40, TRAP, trav(waist=w), theta0=np.pi)
    assert n_2 == pytest.approx(2.0 * n_t, rel=1e-12)


def test_standing_wave_k_eff_scaling():
    xi_opt = xi_amplitude(CA40, TRAP, stan())
    xi_red = xi_amplitude(CA40, TRAP, stan(k_eff=CA40.k_laser / 5.0))
    assert xi_red == pytest.approx(xi_opt / 5.0, rel=1e-12)
    assert push_displacement_limit(CA40, stan(k_eff=CA40.k_laser / 5.0)) \
        == pytest.approx(5.0 * push_displacement_limit(CA40, stan()), rel=1e-12)


def test_push_displacement_limits():
    assert push_displacement_limit(CA40, trav(waist=2e-5)) == pytest.approx(5e-6)
    assert push_displacement_limit(CA40, stan()) == pytest.approx(
        CA40.wavelength / 10.0, rel=1e-12)
    a = TRAP.ground_state_size(CA40)
    ok, xmax, lim = push_displacement_ok(CA40, TRAP, trav(), ForcePulse(xi=1.0, tau=1e-6))
    assert ok and xmax == pytest.approx(a) and lim == pytest.approx(5e-6)
    ok, xmax, _ = push_displacement_ok(CA40, TRAP, trav(),
                                       ForcePulse(xi=400.0, tau=1e-6))
    assert not ok and xmax > 5e-6


def test_scattering_fidelity_warns_when_large():
    assert scattering_fidelity(1e-4) == pytest.approx(np.exp(-1e-4), rel=1e-12)
    with pytest.warns(UserWarning, match="scattering"):
        scattering_fidelity(0.3)
