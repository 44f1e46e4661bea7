#!/usr/bin/env python3
"""Walk through the full error budget of one pushed-gate operating point.

Derives the default operating point (Ca-40, 10 um wells, 100 mW beam focused
to 2 um, Doppler temperature), prints every budget channel and validity flag,
then sweeps the trap frequency to locate the best total infidelity.

Run:  python3 demos/budget_walkthrough.py [--plot]
"""

import sys

import numpy as np

from pushgate.scenario import Scenario, derive, sweep


def show_budget(b):
    sc = b.scenario
    print("trap:   omega/2pi = %.4g Hz, wells %.3g m apart" %
          (sc.trap.omega / (2 * np.pi), sc.trap.d))
    print("laser:  %s wave, %.3g W into a %.3g m waist" %
          (sc.laser.mode, sc.laser.power, sc.laser.waist))
    print("pulse:  xi = %.4g, 2 tau = %.4g s (omega tau = %.3g)" %
          (b.xi, 2 * b.pulse.tau, sc.trap.omega * b.pulse.tau))
    print()
    print("  photon scattering    N    = %.3e" % b.n_photons)
    print("  thermal force errors P_th = %.3e" % b.p_thermal)
    print("  pulse failures       4z   = %.3e" % b.p_pulses)
    print("  total                     = %.3e" % b.total)
    print()
    for f in b.flags:
        print("  [%s] %-22s %.4g" % ("ok" if f.ok else "!!", f.name, f.value))


def main():
    print("=== default operating point ===")
    b = derive(Scenario())
    show_budget(b)

    print()
    print("=== trap frequency sweep ===")
    freqs = np.logspace(5.5, 7.0, 40)
    res = sweep(Scenario(), "omega", freqs)
    total = res.columns["P_total"]
    ok = res.columns["flags_ok"] > 0.5
    best = np.argmin(np.where(ok, total, np.inf))
    print("best valid point: omega/2pi = %.4g Hz, P_total = %.3e" %
          (freqs[best], total[best]))
    print("%12s %12s %12s %8s" % ("f (Hz)", "2tau (s)", "P_total", "valid"))
    for i in range(0, len(freqs), 5):
        print("%12.4g %12.4g %12.4e %8s" %
              (freqs[i], res.columns["two_tau"][i], total[i],
               "yes" if ok[i] else "no"))

    if "--plot" in sys.argv:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        fig, ax = plt.subplots()
        ax.loglog(freqs, total, label="total")
        ax.loglog(freqs, res.columns["N"], "--", label="scattering")
        ax.loglog(freqs, res.columns["P_thermal"], ":", label="thermal")
        ax.set_xlabel("trap frequency (Hz)")
        ax.set_ylabel("infidelity")
        ax.legend()
        fig.savefig("budget_sweep.png", dpi=120)
        print("wrote budget_sweep.png")


if __name__ == "__main__":
    main()
