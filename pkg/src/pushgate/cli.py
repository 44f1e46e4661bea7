"""Command-line interface: fidelity budgets, sweeps, sweet spots, oracles.

    pushgate fidelity  --config ops.cfg [--out point.csv] [--force]
    pushgate sweep     --param omega --min 5e4 --max 5e7 --points 50 --log ...
    pushgate sweetspot [--d-um 1,10,100] ...
    pushgate oracle    [--samples 100000] [--seed 0] ...
    pushgate figure    --preset fig7 ...

Exit codes: 0 success, 2 configuration error, 3 a validity flag failed and
--force was not given.  CSV output uses a header row, comma separators,
17-significant-digit floats and LF line endings, so identical runs produce
identical bytes.
"""

import argparse
import sys

import numpy as np

from .config import ConfigError, build_scenario, load
from .scenario import (SWEEP_PARAMS, derive, figure_run, oracle_run, sweep,
                       sweetspot_report)

FIGURES = ("fig5", "fig6", "fig7", "fig8")


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "%.17g" % float(x)
    return str(x)


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _parser():
    p = argparse.ArgumentParser(prog="pushgate",
                                description="Fidelity budget of the pushed-ion phase gate")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH",
                        help="key=value config file (defaults used when omitted)")
    common.add_argument("--out", metavar="PATH", help="write results as CSV")
    common.add_argument("--force", action="store_true",
                        help="proceed despite failed validity flags")
    common.add_argument("--workers", type=int, default=1,
                        help="worker threads (results identical for any count)")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("fidelity", parents=[common],
                   help="budget of a single operating point")

    ps = sub.add_parser("sweep", parents=[common], help="sweep one parameter")
    ps.add_argument("--param", required=True, choices=SWEEP_PARAMS)
    ps.add_argument("--min", required=True, type=float)
    ps.add_argument("--max", required=True, type=float)
    ps.add_argument("--points", type=int, default=50)
    ps.add_argument("--log", action="store_true", help="log-spaced points")

    pt = sub.add_parser("sweetspot", parents=[common],
                        help="sweet-spot operating points across spacings")
    pt.add_argument("--d-um", default="1,10,100",
                    help="comma list of well spacings in micrometres")

    po = sub.add_parser("oracle", parents=[common],
                        help="closed forms vs Monte Carlo / quadrature oracles")
    po.add_argument("--samples", type=int, default=100000)
    po.add_argument("--seed", type=int, default=0)

    pf = sub.add_parser("figure", parents=[common],
                        help="standard total-infidelity curves vs trap frequency")
    pf.add_argument("--preset", required=True, choices=FIGURES)
    pf.add_argument("--points", type=int, default=50)
    return p


def _scenario(args):
    if args.config:
        return load(args.config)
    return build_scenario({})


def _print_budget(b):
    sc = b.scenario
    print("operating point:")
    print("  detuning Delta/2pi = %.6g Hz" % (b.detuning / (2.0 * np.pi)))
    print("  push amplitude xi  = %.6g" % b.xi)
    print("  pulse width tau    = %.6g s  (2 tau = %.6g s, omega tau = %.4g)"
          % (b.pulse.tau, 2.0 * b.pulse.tau, sc.trap.omega * b.pulse.tau))
    print("budget:")
    print("  photon scattering      N         = %.6g" % b.n_photons)
    print("  thermal force errors   P_thermal = %.6g  (moments: %s)"
          % (b.p_thermal, b.moments_source))
    print("  pulse failures         4 zeta    = %.6g" % b.p_pulses)
    print("  total (sum)                      = %.6g" % b.total)
    print("  total (product form)             = %.6g" % b.total_product)
    print("flags:")
    for f in b.flags:
        print("  [%s] %-20s value = %.4g  (%s)"
              % ("ok" if f.ok else "FAIL", f.name, f.value, f.message))
    for w in b.warnings:
        print("warning: %s" % w)


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        sc = _scenario(args)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2

    try:
        if args.command == "fidelity":
            b = derive(sc)
            _print_budget(b)
            if args.out:
                header = ("detuning_hz", "xi", "tau", "two_tau", "N", "P_thermal",
                          "four_zeta", "P_total", "P_total_product", "flags_ok")
                row = (b.detuning / (2.0 * np.pi), b.xi, b.pulse.tau,
                       2.0 * b.pulse.tau, b.n_photons, b.p_thermal, b.p_pulses,
                       b.total, b.total_product, float(b.ok))
                write_csv(args.out, header, [row])
            if not b.ok and not args.force:
                print("validity flags failed (rerun with --force to accept)",
                      file=sys.stderr)
                return 3
            return 0

        if args.command == "sweep":
            if args.points < 1 or args.max <= args.min:
                print("config error: bad sweep range", file=sys.stderr)
                return 2
            if args.log:
                if args.min <= 0:
                    print("config error: log sweep needs positive bounds",
                          file=sys.stderr)
                    return 2
                vals = np.logspace(np.log10(args.min), np.log10(args.max), args.points)
            else:
                vals = np.linspace(args.min, args.max, args.points)
            res = sweep(sc, args.param, vals, workers=args.workers)
            header = res.header()
            rows = list(res.rows())
            if args.out:
                write_csv(args.out, header, rows)
            else:
                print(",".join(header))
                for row in rows:
                    print(",".join(_fmt(v) for v in row))
            return 0

        if args.command == "sweetspot":
            try:
                d_vals = [float(x) * 1e-6 for x in args.d_um.split(",") if x.strip()]
            except ValueError:
                print("config error: --d-um needs comma-separated numbers",
                      file=sys.stderr)
                return 2
            rows = sweetspot_report(sc, d_vals)
            header = ("d", "s_geometry", "s_ion1", "s_ion2", "omega_sweet",
                      "f_sweet", "xi", "a_xi_over_d", "two_tau", "P_total",
                      "speed_ok", "flags_ok")
            table = [tuple(r[k] for k in header) for r in rows]
            if args.out:
                write_csv(args.out, header, table)
            for r in rows:
                print("d = %-8.3g  f_sweet = %-10.4g Hz  xi = %-8.4g  "
                      "a xi/d = %-9.3g  P_total = %-10.4g  speed %s"
                      % (r["d"], r["f_sweet"], r["xi"], r["a_xi_over_d"],
                         r["P_total"], "ok" if r["speed_ok"] else "LIMITED"))
            return 0

        if args.command == "oracle":
            rows = oracle_run(sc, samples=args.samples, seed=args.seed,
                              workers=args.workers)
            header = ("name", "closed", "oracle", "sem", "z", "ok", "note")
            table = [tuple(r[k] for k in header) for r in rows]
            if args.out:
                write_csv(args.out, header, table)
            bad = False
            for r in rows:
                status = "ok" if r["ok"] else "MISMATCH"
                bad = bad or not r["ok"]
                print("%-28s closed = %-12.6g oracle = %-12.6g z = %-8.3g [%s]"
                      % (r["name"], r["closed"], r["oracle"], r["z"], status))
            if bad:
                print("oracle mismatches found", file=sys.stderr)
            return 0

        if args.command == "figure":
            curves = figure_run(args.preset, n_points=args.points,
                                workers=args.workers)
            header = ("curve", "f_hz") + curves[0][1].header()[1:]
            rows = []
            for label, res in curves:
                for row in res.rows():
                    rows.append((label,) + row)
            if args.out:
                write_csv(args.out, header, rows)
            else:
                print(",".join(header))
                for row in rows:
                    print(",".join(_fmt(v) for v in row))
            return 0
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    except ValueError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
