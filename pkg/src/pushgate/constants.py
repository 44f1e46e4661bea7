"""Physical constants and ion species data used throughout the package.

All quantities are SI unless noted.  Frequencies named ``omega`` are angular
(rad/s); config files and the CLI use ordinary frequencies in Hz and convert
on the way in.
"""

from dataclasses import dataclass

import numpy as np
from scipy import constants as csts

hbar = csts.hbar
k_B = csts.k
eps0 = csts.epsilon_0
c_light = csts.c
q_e = csts.e
amu = csts.atomic_mass
alpha_fs = csts.alpha          # fine-structure constant


def coulomb_ell(charge=q_e):
    """Coulomb energy-distance product  ell = q^2 / (4 pi eps0)  [J m].

    Two ions of charge q separated by r have interaction energy ell/r.
    """
    return charge**2 / (4.0 * np.pi * eps0)


@dataclass(frozen=True)
class IonSpecies:
    """An ion plus the optical transition driven by the pushing laser.

    gamma is the angular decay rate (rad/s) of that transition.
    """
    name: str
    mass: float          # kg
    charge: float        # C
    wavelength: float    # m, of the pushing-laser transition
    gamma: float         # rad/s

    @property
    def k_laser(self):
        """Optical wavenumber 2*pi/lambda of the transition."""
        return 2.0 * np.pi / self.wavelength

    @property
    def doppler_temperature(self):
        """Doppler-cooling limit  T = hbar*gamma / (2 kB)."""
        return hbar * self.gamma / (2.0 * k_B)

    @property
    def ell(self):
        return coulomb_ell(self.charge)


# 40Ca+: pushing laser near the 4S1/2 - 4P1/2 line at 397 nm,
# upper-state lifetime ~7.1 ns.
CA40 = IonSpecies(
    name="Ca40",
    mass=40.0 * amu,
    charge=q_e,
    wavelength=397e-9,
    gamma=1.0 / 7.1e-9,
)


def mean_phonon_number(T, omega):
    """High-temperature mean vibrational number kB*T / (hbar*omega)."""
    return k_B * T / (hbar * omega)
