#!/usr/bin/env python3
"""Thermal averages: closed forms against their Monte Carlo oracles.

Draws thermal motion (energies and phases) and, for the non-uniform beam,
the ion position inside the focus, then compares the sampled mean infidelity
with the closed-form predictions the budget uses.

Run:  python3 demos/thermal_checks.py
"""

import numpy as np

from pushgate.constants import CA40
from pushgate.dipole_force import LaserConfig
from pushgate.phase_engine import (fidelity_echo_closed, gate_time_for_angle,
                                   mc_echo_infidelity, vartheta_bar_closed)
from pushgate.thermal_nonuniform import (fidelity_nonuniform_full,
                                         fidelity_sw_closed,
                                         mc_nonuniform_echo, position_sigma,
                                         xi_moments_quadrature)
from pushgate.trap_dynamics import ForcePulse, ThermalEnsemble, TrapConfig

OMEGA = 2.0 * np.pi * 1e6
SAMPLES = 50000


def main():
    a = TrapConfig(OMEGA, 1e-5).ground_state_size(CA40)
    trap = TrapConfig(OMEGA, a / 1e-3)          # a/d = 1e-3
    ens = ThermalEnsemble.from_nbar(10.0, OMEGA, seed=0)
    beta = ens.kT_over_hw(OMEGA)
    tau = gate_time_for_angle(np.pi / 2.0, trap, CA40, 1.0)
    pulse = ForcePulse(xi=1.0, tau=tau)
    print("a/d = %.1e, k_B T = %.3g hbar omega, omega tau = %.3g" %
          (a / trap.d, beta, OMEGA * tau))

    print()
    print("--- mean gate angle (echo-corrected) ---")
    print("closed form: %.8f rad" % vartheta_bar_closed(pulse, trap, CA40, beta))

    print()
    print("--- echo infidelity, uniform force ---")
    closed = 1.0 - fidelity_echo_closed(pulse, trap, CA40, beta)
    mean, sem = mc_echo_infidelity(pulse, trap, CA40, ens, SAMPLES, seed=3)
    print("closed %.4e   MC %.4e +- %.1e   (z = %.2f)" %
          (closed, mean, sem, abs(closed - mean) / sem))

    print()
    print("--- echo infidelity, ion sampling a Gaussian focus ---")
    laser = LaserConfig(mode="traveling", power=0.1, waist=2e-6, x0=1e-6)
    sigma = position_sigma(CA40, trap, ens.T)
    print("position spread 2 sigma / w = %.3f" % (2 * sigma / laser.waist))
    mom = xi_moments_quadrature(laser, CA40, 1.0, sigma)
    closed = 1.0 - fidelity_nonuniform_full(np.pi / 2.0, mom, a / trap.d, beta)
    mean, sem = mc_nonuniform_echo(CA40, trap, laser, ens, np.pi / 2.0, 1.0,
                                   SAMPLES, seed=3, moments=mom)
    print("closed %.4e   MC %.4e +- %.1e   (z = %.2f)" %
          (closed, mean, sem, abs(closed - mean) / sem))

    print()
    print("--- standing wave: fidelity floor vs temperature ---")
    print("(optimal offset k z0 = pi/4, pi gate)")
    print("%12s %12s" % ("(k sigma)^2", "fidelity"))
    for ks2 in (1e-3, 1e-2, 0.1, 0.5, 2.0, 10.0):
        print("%12.3g %12.6f" % (ks2, fidelity_sw_closed(np.pi / 2.0, ks2)))
    print("floor: 1 - pi^2/128 = %.6f" % (1 - np.pi ** 2 / 128))


if __name__ == "__main__":
    main()
