"""Single-qubit phase sensitivity, sweet spot, and intensity-noise tests."""

import numpy as np
import pytest

from pushgate.constants import CA40, alpha_fs, c_light, hbar
from pushgate.dipole_force import LaserConfig, _local_rabi_sq
from pushgate.phase_engine import SQRT_PI_8, GateGeometry, thermal_mean_phases
from pushgate.stability import (dphi_dxi, geometry_to_s,
                                intensity_noise_infidelity, omega_sweet,
                                single_qubit_phase, speed_constraints,
                                sweet_spot)
from pushgate.trap_dynamics import (ForcePulse, ThermalEnsemble, TrapConfig,
                                    coulomb_parameter)

OMEGA = 2.0 * np.pi * 1e6
TRAP = TrapConfig(OMEGA, 1e-5)
PULSE = ForcePulse(xi=1.19, tau=5.0 / OMEGA)
BETA = 10.0


def test_single_qubit_phase_matches_assembled_means():
    ens = ThermalEnsemble.from_nbar(BETA, OMEGA)
    for d2 in (1, -1):
        geo = GateGeometry(s1=2e-7, s2=-1e-7, direction2=d2)
        th = thermal_mean_phases(PULSE, TRAP, CA40, ens, geo).theta
        p1 = single_qubit_phase(PULSE, TRAP, CA40, 2e-7, BETA, ion=1,
                                direction2=d2)
        p2 = single_qubit_phase(PULSE, TRAP, CA40, -1e-7, BETA, ion=2,
                                direction2=d2)
        assert p1 == pytest.approx(th[1, 0] - th[0, 0], rel=1e-10)
        assert p2 == pytest.approx(th[0, 1] - th[0, 0], rel=1e-10)


def test_phase_is_steep_in_units_of_the_gate():
    # the push phase is huge: ~d/(xi a) times the order-one gate angle,
    # which is why intensity noise matters at all
    p1 = single_qubit_phase(PULSE, TRAP, CA40, 0.0, BETA)
    assert abs(p1) > 100.0


def test_dphi_dxi_finite_difference():
    h = 1e-7
    for ion, d2, s in ((1, 1, 0.0), (2, 1, 3e-7), (2, -1, -2e-7)):
        up = single_qubit_phase(ForcePulse(xi=PULSE.xi + h, tau=PULSE.tau),
                                TRAP, CA40, s, BETA, ion=ion, direction2=d2)
        dn = single_qubit_phase(ForcePulse(xi=PULSE.xi - h, tau=PULSE.tau),
                                TRAP, CA40, s, BETA, ion=ion, direction2=d2)
        got = dphi_dxi(PULSE, TRAP, CA40, s, BETA, ion=ion, direction2=d2)
        assert got == pytest.approx((up - dn) / (2.0 * h), rel=1e-6)


def test_dphi_dxi_averaging_hook():
    eps = coulomb_parameter(CA40, TRAP)
    wt = OMEGA * PULSE.tau
    plain = dphi_dxi(PULSE, TRAP, CA40, 0.0, BETA)
    hooked = dphi_dxi(PULSE, TRAP, CA40, 0.0, BETA,
                      xi2_derivative=lambda xi: 2.0 * xi + 0.3)
    shift = SQRT_PI_8 * wt * (1.0 - 0.5 * eps - 1.0 / wt ** 2) * 0.3
    assert hooked - plain == pytest.approx(shift, rel=1e-9)


def test_sweet_spot_zeroes_the_sensitivity():
    for ion in (1, 2):
        for d2 in (1, -1):
            off = dphi_dxi(PULSE, TRAP, CA40, 0.0, BETA, ion=ion, direction2=d2)
            s = sweet_spot(PULSE, TRAP, CA40, BETA, ion=ion, direction2=d2)
            on = dphi_dxi(PULSE, TRAP, CA40, s, BETA, ion=ion, direction2=d2)
            assert abs(on) < 1e-10 * abs(off)


def test_sweet_spot_leading_order_residual():
    eps = coulomb_parameter(CA40, TRAP)
    a = TRAP.ground_state_size(CA40)
    r = a / TRAP.d
    wt = OMEGA * PULSE.tau
    xi = PULSE.xi
    for ion, odd in ((1, -1.0), (2, +1.0)):
        s = sweet_spot(PULSE, TRAP, CA40, BETA, ion=ion, order="leading")
        resid = dphi_dxi(PULSE, TRAP, CA40, s, BETA, ion=ion)
        high = (odd * r * (3.0 * xi ** 2 / np.sqrt(6.0)
                           + 6.0 * BETA / np.sqrt(2.0))
                - r ** 2 * (np.sqrt(2.0) * xi ** 3 + 12.0 * BETA * xi))
        assert resid == pytest.approx(SQRT_PI_8 * eps * wt * high, rel=1e-9)
    with pytest.raises(ValueError):
        sweet_spot(PULSE, TRAP, CA40, BETA, order="cubic")


def test_sweet_spot_offsets_have_opposite_signs():
    s1 = sweet_spot(PULSE, TRAP, CA40, BETA, ion=1)
    s2 = sweet_spot(PULSE, TRAP, CA40, BETA, ion=2)
    assert s1 * s2 < 0.0


def test_geometry_to_s_is_linearized_intensity_zero():
    h = 1e-10
    trav = LaserConfig(mode="traveling", power=0.05, waist=2e-5, x0=7e-6,
                       detuning=-1e14)
    stan = LaserConfig(mode="standing", power=0.05, waist=2e-5, kz0=0.6,
                       detuning=-1e14)
    for laser in (trav, stan):
        v0 = _local_rabi_sq(CA40, laser, 0.0)
        dv = (_local_rabi_sq(CA40, laser, h)
              - _local_rabi_sq(CA40, laser, -h)) / (2.0 * h)
        assert geometry_to_s(CA40, laser) == pytest.approx(-v0 / dv, rel=1e-5)


def test_omega_sweet_consistency_and_example():
    s = geometry_to_s(CA40, LaserConfig(mode="traveling", power=0.05,
                                        waist=4e-6, x0=2e-6, detuning=-1e14))
    assert s == pytest.approx(-2e-6, rel=1e-12)
    w = omega_sweet(CA40, 1e-4, s)
    # at that frequency the leading sweet-spot condition |s| = eps d / 4 holds
    eps = coulomb_parameter(CA40, TrapConfig(w, 1e-4))
    assert eps * 1e-4 / 4.0 == pytest.approx(abs(s), rel=1e-12)
    assert w / (2.0 * np.pi) == pytest.approx(66326.0, rel=1e-3)
    with pytest.raises(ValueError):
        omega_sweet(CA40, 1e-4, 0.0)


def test_intensity_noise_scaling_and_drop():
    i1 = intensity_noise_infidelity(PULSE, TRAP, CA40, 0.0, BETA, 1e-3)
    i2 = intensity_noise_infidelity(PULSE, TRAP, CA40, 0.0, BETA, 2e-3)
    assert i2 == pytest.approx(4.0 * i1, rel=1e-12)
    s = sweet_spot(PULSE, TRAP, CA40, BETA)
    on = intensity_noise_infidelity(PULSE, TRAP, CA40, s, BETA, 1e-3)
    assert i1 / max(on, 1e-300) > 1e4


def test_speed_constraints_report():
    laser = LaserConfig(mode="traveling", power=0.05, waist=2e-5, x0=1e-5,
                        detuning=-1e14)
    sc = speed_constraints(CA40, TRAP, laser, PULSE)
    v = 5.0 * CA40.ell * np.sqrt(8.0) / (hbar * np.sqrt(np.pi))
    assert sc["speed"] == pytest.approx(v, rel=1e-12)
    assert sc["speed"] == pytest.approx(1.74553e7, rel=1e-3)
    assert sc["xi_a_over_d"] == pytest.approx(np.sqrt(OMEGA * TRAP.d / v),
                                              rel=1e-12)
    wt_min = (TRAP.d / sc["displacement_limit"]) ** 2 * OMEGA * TRAP.d \
        / (alpha_fs * c_light)
    assert sc["omega_tau_min"] == pytest.approx(wt_min, rel=1e-12)
    assert sc["ok"]
    # a hard-confined standing wave pushes the adiabaticity floor above the
    # operating point
    tight = LaserConfig(mode="standing", power=0.05, waist=2e-5,
                        detuning=-1e14, k_eff=1e10)
    assert not speed_constraints(CA40, TRAP, tight, PULSE)["ok"]
