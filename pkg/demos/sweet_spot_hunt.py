#!/usr/bin/env python3
"""Find the intensity-noise sweet spot and measure what it buys.

The single-qubit phase each ion picks up depends on the push amplitude xi,
so laser intensity noise dephases the qubits -- unless a static force offset
is chosen so that dPhi/dxi = 0.  This script scans the offset, solves for the
sweet spot, and compares the noise-induced infidelity on and off it, then
tabulates the trap frequency that realizes the spot for a fixed geometry.

Run:  python3 demos/sweet_spot_hunt.py
"""

import numpy as np

from pushgate.constants import CA40
from pushgate.dipole_force import LaserConfig
from pushgate.scenario import Scenario, sweetspot_report
from pushgate.stability import (dphi_dxi, geometry_to_s,
                                intensity_noise_infidelity, sweet_spot)
from pushgate.trap_dynamics import ForcePulse, TrapConfig

OMEGA = 2.0 * np.pi * 1e6
TRAP = TrapConfig(OMEGA, 1e-5)
BETA = 10.0


def main():
    pulse = ForcePulse(xi=1.19, tau=5.0 / OMEGA)

    print("--- phase sensitivity vs static force offset ---")
    spot = sweet_spot(pulse, TRAP, CA40, BETA, order="full")
    print("%12s %14s" % ("s (m)", "dPhi1/dxi"))
    for s in np.linspace(2.0 * spot, 0.0, 9):
        print("%12.3e %14.4e" % (s, dphi_dxi(pulse, TRAP, CA40, s, BETA)))
    print("root: s = %.6e m  (dPhi/dxi = %.1e)" %
          (spot, dphi_dxi(pulse, TRAP, CA40, spot, BETA)))

    print()
    print("--- what the spot buys at dI/I = 1e-3 ---")
    off = intensity_noise_infidelity(pulse, TRAP, CA40, 2.0 * spot, BETA, 1e-3)
    on = intensity_noise_infidelity(pulse, TRAP, CA40, spot, BETA, 1e-3)
    print("off-spot infidelity %.3e, on-spot %.3e  (x%.1e suppression)" %
          (off, on, off / max(on, 1e-300)))

    print()
    print("--- trap frequency that puts the gate on the spot ---")
    laser = LaserConfig(mode="traveling", power=0.1, waist=4e-6, x0=2e-6)
    print("beam geometry gives s = %.3e m" % geometry_to_s(CA40, laser))
    rows = sweetspot_report(Scenario(laser=laser), [1e-6, 1e-5, 1e-4])
    print("%10s %12s %10s %12s %10s" %
          ("d (m)", "f_sweet(Hz)", "xi", "P_total", "speed"))
    for r in rows:
        print("%10.1e %12.4g %10.3g %12.3e %10s" %
              (r["d"], r["f_sweet"], r["xi"], r["P_total"],
               "ok" if r["speed_ok"] else "limited"))


if __name__ == "__main__":
    main()
