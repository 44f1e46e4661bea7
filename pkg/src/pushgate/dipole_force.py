"""Off-resonant dipole push beams and their photon-scattering cost.

A detuned Gaussian beam (traveling wave, intensity offset from the ion) or a
detuned standing wave (ion offset from a node) exerts a state-dependent
dipole force.  The push amplitude xi follows from the local intensity
gradient; the price is spontaneous scattering at rate R ~ (Gamma/4)
|Omega|^2 / Delta^2, which destroys the coherence with probability ~N, the
number of photons scattered during the two pulse pairs of the echo sequence.
N is independent of the detuning once the pulse is rescaled to keep the gate
angle fixed, so the only handles on it are the geometry and the laser power.

Delta is the angular detuning (rad/s) and may be negative (red); xi carries
the corresponding sign.  The standing-wave effective wavenumber k_eff can be
reduced below the optical k by crossing the beams at an angle.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .constants import c_light, eps0, hbar
from .trap_dynamics import ForcePulse
from .phase_engine import gate_time_for_angle

TRAVELING = "traveling"
STANDING = "standing"


@dataclass(frozen=True)
class LaserConfig:
    """Push-beam settings.

    mode      'traveling' or 'standing'
    power     beam power (W)
    waist     Gaussian waist w (m)
    x0        beam-center offset from the ion (m), traveling mode
    kz0       ion offset from the node, as k_eff z0 (rad), standing mode
    detuning  angular detuning Delta (rad/s); None = choose later
    k_eff     effective wavenumber of the standing wave (1/m); None = optical
    """
    mode: str
    power: float
    waist: float
    x0: float = 0.0
    kz0: float = np.pi / 4.0
    detuning: float = None
    k_eff: float = None

    def __post_init__(self):
        if self.mode not in (TRAVELING, STANDING):
            raise ValueError("mode must be 'traveling' or 'standing'")
        if self.power <= 0 or self.waist <= 0:
            raise ValueError("power and waist must be positive")
        if self.mode == TRAVELING and self.x0 == 0.0:
            raise ValueError("traveling mode needs a nonzero beam offset x0")
        if self.mode == STANDING and abs(np.sin(2.0 * self.kz0)) < 1e-9:
            raise ValueError("standing mode needs sin(2 kz0) != 0: "
                             "no linear force at a node or antinode")

    def wavenumber(self, species):
        return species.k_laser if self.k_eff is None else self.k_eff


def rabi_sq(species, laser):
    """Peak squared Rabi frequency |Omega0|^2 = 12 Gamma P / (hbar c k^3 w^2).

    Equivalently 6 pi Gamma I / (hbar c k^3) with the peak intensity
    I = 2 P / (pi w^2); k is the optical wavenumber of the transition.
    """
    k = species.k_laser
    return 12.0 * species.gamma * laser.power / (hbar * c_light * k ** 3 * laser.waist ** 2)


def check_weak_coupling(species, laser):
    """Refuse |Omega0| > |Delta| / 10: outside the far-detuned expansion."""
    if laser.detuning is None:
        raise ValueError("laser detuning is not set")
    if np.sqrt(rabi_sq(species, laser)) > 0.1 * abs(laser.detuning):
        raise ValueError("|Omega0| exceeds |Delta|/10: push beam not weakly coupled")


def xi_amplitude(species, trap, laser, check=True):
    """Dimensionless push amplitude at the ion (signed).

    traveling: xi = a (x - x0) |Omega0|^2 e^{-2((x-x0)/w)^2} / (omega Delta w^2)
    standing:  xi = -(a k / omega Delta) |Omega0|^2 sin[2k(z - z0)] e^{-2(x/w)^2}

    evaluated at the trap centre x = z = 0.  |xi| is maximized at x0 = w/2
    (traveling) and k z0 = pi/4 (standing).  check=False skips the
    weak-coupling guard (callers then must flag the violation themselves).
    """
    if check:
        check_weak_coupling(species, laser)
    a = trap.ground_state_size(species)
    o2 = rabi_sq(species, laser)
    if laser.mode == TRAVELING:
        u = -laser.x0 / laser.waist
        return float(a * (-laser.x0) * o2 * np.exp(-2.0 * u ** 2)
                     / (trap.omega * laser.detuning * laser.waist ** 2))
    k = laser.wavenumber(species)
    return float(-(a * k / (trap.omega * laser.detuning)) * o2 * np.sin(-2.0 * laser.kz0))


def pulse_for_gate(species, trap, laser, theta0=np.pi / 2.0, window=6.0, check=True):
    """Force pulse realizing gate angle theta0 per pulse pair with this beam."""
    xi = abs(xi_amplitude(species, trap, laser, check=check))
    tau = gate_time_for_angle(theta0, trap, species, xi)
    return ForcePulse(xi=xi, tau=tau, window=window)


# -- scattering -----------------------------------------------------------------

@dataclass(frozen=True)
class ScatteringReport:
    """Photon scattering over the two pulse pairs of the echo sequence."""
    rate_peak: float      # peak scattering rate at the ion (1/s)
    n_photons: float      # closed-form count, ion at the trap centre
    n_quadrature: float   # count along the pushed trajectory
    fidelity: float       # e^{-n_photons}

    @property
    def infidelity(self):
        return -np.expm1(-self.n_photons)


def _local_rabi_sq(species, laser, x):
    """|Omega(x)|^2 at displacement x along the push direction (peak of pulse)."""
    o2 = rabi_sq(species, laser)
    if laser.mode == TRAVELING:
        u = (x - laser.x0) / laser.waist
        return o2 * np.exp(-2.0 * u ** 2)
    k = laser.wavenumber(species)
    return 4.0 * o2 * np.sin(k * (x - laser.kz0 / k)) ** 2


def photons_scattered(species, trap, laser, pulse, n_nodes=400, check=True):
    """Scattering budget of the echo sequence (two pulse pairs).

    rate R(t) = (Gamma / 4) |Omega|^2 / Delta^2 with the pulse envelope;
    n_photons integrates it with the ion at the trap centre, n_quadrature
    along the pushed trajectory xbar(t) = a xi f(t) (they differ at the
    percent level when the push is small compared to the beam scale).
    """
    if check:
        check_weak_coupling(species, laser)
    g4 = species.gamma / (4.0 * laser.detuning ** 2)
    rate_peak = g4 * _local_rabi_sq(species, laser, 0.0)
    n_closed = 2.0 * rate_peak * pulse.tau * np.sqrt(np.pi)

    a = trap.ground_state_size(species)
    x, wts = np.polynomial.legendre.leggauss(n_nodes)
    t = 0.5 * (pulse.t_stop - pulse.t_start) * x
    wts = 0.5 * (pulse.t_stop - pulse.t_start) * wts
    f = pulse.envelope(t)
    xbar = a * pulse.xi * f
    rt = g4 * f * _local_rabi_sq(species, laser, xbar)
    n_quad = 2.0 * float(np.sum(rt * wts))

    return ScatteringReport(rate_peak=float(rate_peak), n_photons=float(n_closed),
                            n_quadrature=n_quad, fidelity=float(np.exp(-n_closed)))


def photons_scattered_power_form(species, trap, laser, theta0=np.pi / 2.0):
    """Closed scattering count from power and geometry alone.

    With the pulse rescaled to gate angle theta0 the detuning drops out:

    traveling: N = (2 theta0/pi) (pi^5 sqrt2/3) (eps0 c/q^2) (m^2/lam^3)
                   (w^6/x0^2) e^{2(x0/w)^2} d^3 omega^4 / P
    standing:  N = (2 theta0/pi) (pi^2 sqrt2/24) (eps0 c/q^2) m^2
                   (k_opt^3/k_eff^2) w^2 d^3 omega^4 / (P cos^2(k_eff z0)),

    which reduces to (pi^3 sqrt2/12)(eps0 c/q^2)(m^2/lam) ... for
    k_eff = k_opt.  Independent of Delta exactly.
    """
    m = species.mass
    q2 = species.charge ** 2
    base = (eps0 * c_light / q2) * m ** 2 * trap.d ** 3 * trap.omega ** 4 / laser.power
    scale = 2.0 * theta0 / np.pi
    if laser.mode == TRAVELING:
        lam = species.wavelength
        geom = (laser.waist ** 6 / laser.x0 ** 2) * np.exp(2.0 * (laser.x0 / laser.waist) ** 2)
        return float(scale * (np.pi ** 5 * np.sqrt(2.0) / 3.0) / lam ** 3 * base * geom)
    k_opt = species.k_laser
    k_eff = laser.wavenumber(species)
    geom = laser.waist ** 2 / np.cos(laser.kz0) ** 2
    return float(scale * (np.pi ** 2 * np.sqrt(2.0) / 24.0)
                 * (k_opt ** 3 / k_eff ** 2) * base * geom)


def scattering_fidelity(n_photons):
    """Coherence surviving N scattering events: e^{-N}."""
    if n_photons >= 0.1:
        warnings.warn("N >= 0.1 photons scattered: scattering dominates the budget")
    return float(np.exp(-n_photons))


def push_displacement_limit(species, laser):
    """Largest allowed push displacement: w/4 (traveling), lambda/10 (standing).

    Beyond this the force nonlinearity across the trajectory invalidates the
    constant-xi description (standing limit uses the effective wavelength).
    """
    if laser.mode == TRAVELING:
        return laser.waist / 4.0
    return 2.0 * np.pi / laser.wavenumber(species) / 10.0


def push_displacement_ok(species, trap, laser, pulse):
    """(ok, xbar_max, limit): is the peak push within the force-linearity range?"""
    xmax = trap.ground_state_size(species) * abs(pulse.xi)
    lim = push_displacement_limit(species, laser)
    return bool(xmax <= lim), float(xmax), float(lim)
