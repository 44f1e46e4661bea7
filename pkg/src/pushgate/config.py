"""Flat key=value configuration files for the command-line tools.

Lines hold one `key = value` pair; `#` starts a comment, blank lines are
skipped.  Keys are fixed -- an unknown key is an error, not a warning, so a
typo cannot silently fall back to a default.  Frequencies carry an `_hz`
suffix and are ordinary frequencies (cycles per second); they are multiplied
by 2 pi on the way in.  Lengths, powers and temperatures carry their unit in
the key name.

    ion.mass_u            ion mass (atomic mass units)        default 40
    ion.charge_e          charge (elementary charges)         default 1
    ion.lambda_nm         push-transition wavelength          default 397
    ion.gamma_hz          transition linewidth Gamma/2pi      default 1/(2 pi 7.1 ns)
    trap.omega_hz         trap frequency omega/2pi            default 1e6
    trap.d_um             well spacing                        default 10
    laser.mode            traveling | standing                default traveling
    laser.power_mw        beam power                          default 100
    laser.waist_um        beam waist                          default 2
    laser.kz0_rad         standing-wave offset k z0           default pi/4
    laser.x0_frac_of_w    traveling-wave offset x0/w          default 0.5
    laser.detuning_hz     detuning Delta/2pi; omit to derive it from the
                          pulse regime (omega tau = 5)
    thermal.preset        doppler | n1 (exclusive with thermal.T_uK)
    thermal.T_uK          temperature in microkelvin
    pulses.zeta           pi-pulse bit-flip probability       default 0
    sequence.target       pi | pi/2 (total two-qubit phase)   default pi
"""

import numpy as np

from .constants import IonSpecies, amu, q_e
from .dipole_force import LaserConfig
from .scenario import DOPPLER, ONE_PHONON, Scenario
from .trap_dynamics import TrapConfig


class ConfigError(ValueError):
    """Malformed configuration: unknown key, bad value, conflicting settings."""


_FLOAT_KEYS = {
    "ion.mass_u", "ion.charge_e", "ion.lambda_nm", "ion.gamma_hz",
    "trap.omega_hz", "trap.d_um",
    "laser.power_mw", "laser.waist_um", "laser.kz0_rad", "laser.x0_frac_of_w",
    "laser.detuning_hz",
    "thermal.T_uK", "pulses.zeta",
}
_STRING_KEYS = {"laser.mode", "thermal.preset", "sequence.target"}
KNOWN_KEYS = _FLOAT_KEYS | _STRING_KEYS

_DEFAULTS = {
    "ion.mass_u": 40.0,
    "ion.charge_e": 1.0,
    "ion.lambda_nm": 397.0,
    "ion.gamma_hz": 1.0 / (2.0 * np.pi * 7.1e-9),
    "trap.omega_hz": 1e6,
    "trap.d_um": 10.0,
    "laser.mode": "traveling",
    "laser.power_mw": 100.0,
    "laser.waist_um": 2.0,
    "laser.kz0_rad": np.pi / 4.0,
    "laser.x0_frac_of_w": 0.5,
    "pulses.zeta": 0.0,
    "sequence.target": "pi",
}

TARGETS = {"pi": np.pi / 2.0, "pi/2": np.pi / 4.0}  # per-application theta0


def parse_text(text):
    """Parse config text into a {key: value} dict (floats and strings)."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("line %d: expected key = value, got %r" % (lineno, raw.strip()))
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError("line %d: unknown key %r" % (lineno, key))
        if key in out:
            raise ConfigError("line %d: duplicate key %r" % (lineno, key))
        if key in _FLOAT_KEYS:
            try:
                out[key] = float(val)
            except ValueError:
                raise ConfigError("line %d: key %r needs a number, got %r"
                                  % (lineno, key, val)) from None
        else:
            out[key] = val
    return out


def load(path):
    """Read a config file and build the Scenario it describes."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError("cannot read config %r: %s" % (path, exc)) from None
    return build_scenario(parse_text(text))


def build_scenario(cfg):
    """Assemble a Scenario from parsed key/value pairs (defaults filled in)."""
    if "thermal.preset" in cfg and "thermal.T_uK" in cfg:
        raise ConfigError("thermal.preset and thermal.T_uK are exclusive")
    vals = dict(_DEFAULTS)
    vals.update(cfg)

    if vals["sequence.target"] not in TARGETS:
        raise ConfigError("sequence.target must be one of %s"
                          % ", ".join(sorted(TARGETS)))
    theta0 = TARGETS[vals["sequence.target"]]

    species = IonSpecies(
        name="config",
        mass=vals["ion.mass_u"] * amu,
        charge=vals["ion.charge_e"] * q_e,
        wavelength=vals["ion.lambda_nm"] * 1e-9,
        gamma=2.0 * np.pi * vals["ion.gamma_hz"],
    )
    if species.mass <= 0 or species.charge <= 0 or species.wavelength <= 0 \
            or species.gamma <= 0:
        raise ConfigError("ion parameters must be positive")

    try:
        trap = TrapConfig(omega=2.0 * np.pi * vals["trap.omega_hz"],
                          d=vals["trap.d_um"] * 1e-6)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    detuning = None
    if "laser.detuning_hz" in cfg:
        detuning = 2.0 * np.pi * vals["laser.detuning_hz"]
    waist = vals["laser.waist_um"] * 1e-6
    try:
        laser = LaserConfig(mode=vals["laser.mode"], power=vals["laser.power_mw"] * 1e-3,
                            waist=waist, x0=vals["laser.x0_frac_of_w"] * waist,
                            kz0=vals["laser.kz0_rad"], detuning=detuning)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    if "thermal.T_uK" in cfg:
        if vals["thermal.T_uK"] < 0:
            raise ConfigError("thermal.T_uK must be non-negative")
        thermal = vals["thermal.T_uK"] * 1e-6
    else:
        thermal = vals.get("thermal.preset", DOPPLER)
        if thermal not in (DOPPLER, ONE_PHONON):
            raise ConfigError("thermal.preset must be doppler or n1")

    zeta = vals["pulses.zeta"]
    if not 0.0 <= zeta <= 1.0:
        raise ConfigError("pulses.zeta must lie in [0, 1]")

    return Scenario(species=species, trap=trap, laser=laser, thermal=thermal,
                    zeta=zeta, theta0=theta0)
