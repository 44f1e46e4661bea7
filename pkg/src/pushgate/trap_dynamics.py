"""Single-ion motion under a pulsed push force in a harmonic well.

Two ions sit in separate harmonic wells a distance d apart; the Coulomb
repulsion couples them weakly.  This module covers the classical motion of
one ion: the coupling parameter eps and the equilibrium stretch it causes,
the normal-mode frequency corrections, the driven trajectory under a
Gaussian force pulse split into its adiabatic, non-adiabatic and thermal
parts, and the adiabaticity figure of merit.  A direct ODE integration is
provided as an independent check on the closed-form trajectory.

Lengths are in metres, energies in joules, times in seconds; omega is the
angular trap frequency (rad/s).  The dimensionless push amplitude xi
measures the peak adiabatic displacement in units of the ground-state size
a = sqrt(hbar / m omega).
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, solve_ivp

from .constants import hbar, k_B


# -- configuration types ------------------------------------------------------

@dataclass(frozen=True)
class TrapConfig:
    """Two separate harmonic wells: angular frequency omega (rad/s), spacing d (m)."""
    omega: float
    d: float

    def __post_init__(self):
        if self.omega <= 0 or self.d <= 0:
            raise ValueError("trap frequency and spacing must be positive")

    def ground_state_size(self, species):
        """a = sqrt(hbar / m omega)."""
        return np.sqrt(hbar / (species.mass * self.omega))


@dataclass(frozen=True)
class MotionState:
    """Classical motional state of the two ions: energies (J) and phases (rad)."""
    E1: float
    E2: float
    psi1: float = 0.0
    psi2: float = 0.0

    def __post_init__(self):
        if self.E1 < 0 or self.E2 < 0:
            raise ValueError("motional energies must be non-negative")


@dataclass(frozen=True)
class ThermalEnsemble:
    """Thermal motional ensemble at temperature T (K), with an RNG seed."""
    T: float
    seed: int = 0

    def __post_init__(self):
        if self.T < 0:
            raise ValueError("temperature must be non-negative")

    @classmethod
    def from_nbar(cls, nbar, omega, seed=0):
        """Ensemble with mean phonon number nbar at trap frequency omega."""
        return cls(T=nbar * hbar * omega / k_B, seed=seed)

    def kT_over_hw(self, omega):
        """Mean energy in units of hbar omega."""
        return k_B * self.T / (hbar * omega)


@dataclass(frozen=True)
class ForcePulse:
    """Gaussian push pulse: peak displacement xi (units of a), width tau (s).

    The adiabatic displacement of a pushed ion is xbar(t) = a xi f(t) with
    f(t) = exp(-(t/tau)^2); the integration window is |t| <= window * tau.
    """
    xi: float
    tau: float
    window: float = 6.0

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError("pulse width must be positive")
        if self.window < 3.0:
            raise ValueError("window shorter than 3 tau truncates the pulse")

    def envelope(self, t):
        """f(t) = exp(-(t/tau)^2)."""
        return np.exp(-(np.asarray(t) / self.tau) ** 2)

    def envelope_dot(self, t):
        t = np.asarray(t)
        return -2.0 * t / self.tau ** 2 * np.exp(-(t / self.tau) ** 2)

    @property
    def t_start(self):
        return -self.window * self.tau

    @property
    def t_stop(self):
        return self.window * self.tau


# -- Coulomb coupling ----------------------------------------------------------

def coulomb_parameter(species, trap):
    """Dimensionless coupling eps = 4 ell / (m omega^2 d^3) of the two wells."""
    return 4.0 * species.ell / (species.mass * trap.omega ** 2 * trap.d ** 3)


def equilibrium_stretch(species, trap):
    """Increase of the ion spacing due to the Coulomb repulsion.

    The stretch solves Delta (d + Delta)^2 = eps d^3 / 2 exactly; in closed
    form Delta = (4d/3) sinh^2{(1/6) ln[eta + 1 + sqrt(eta(eta+2))]} with
    eta = 27 eps / 4.  For eps << 1 this is close to eps d / 2.
    """
    eps = coulomb_parameter(species, trap)
    eta = 27.0 * eps / 4.0
    return (4.0 * trap.d / 3.0) * np.sinh(np.log(eta + 1.0 + np.sqrt(eta * (eta + 2.0))) / 6.0) ** 2


def frequency_correction(eps):
    """Normal-mode corrections from the Coulomb coupling.

    Returns (axial_antiphase, transverse_antiphase) as factors on omega:
    sqrt(1 + eps) for antiphase motion along the line of centres and
    sqrt(1 - eps/2) transverse to it.  Requires eps < 2.
    """
    if eps >= 2.0:
        raise ValueError("coupling eps >= 2: transverse antiphase mode unstable")
    return np.sqrt(1.0 + eps), np.sqrt(1.0 - 0.5 * eps)


# -- driven trajectory ----------------------------------------------------------

def _gl_panels(t, n_nodes=10):
    """Gauss-Legendre nodes/weights on each panel [t_k, t_{k+1}] of a grid."""
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    mid = 0.5 * (t[1:] + t[:-1])
    half = 0.5 * (t[1:] - t[:-1])
    nodes = mid[:, None] + half[:, None] * x[None, :]
    weights = half[:, None] * w[None, :]
    return nodes, weights


def analytic_trajectory(pulse, trap, motion_E, motion_psi, species, n=2001):
    """Closed-form trajectory of one pushed ion on a uniform time grid.

    x(t) = xbar(t) - delta(t) + Delta(t): the adiabatic displacement
    xbar = a xi f(t), the non-adiabatic response delta solving
    delta'' + omega^2 delta = xbar'' with delta(t0) = 0 and
    delta'(t0) = xbar'(t0), and the free thermal oscillation
    Delta = a sqrt(2 E / hbar omega) cos(omega t + psi).  The quadratures for
    delta use per-panel Gauss-Legendre rules far below 1e-12 * a error.

    Returns a dict with keys t, x, xbar, delta, Delta.
    """
    w = trap.omega
    a = trap.ground_state_size(species)
    t = np.linspace(pulse.t_start, pulse.t_stop, n)
    xbar = a * pulse.xi * pulse.envelope(t)

    nodes, wts = _gl_panels(t)
    xbar_dot = a * pulse.xi * pulse.envelope_dot(nodes)
    A = np.concatenate(([0.0], np.cumsum(np.sum(xbar_dot * np.sin(w * nodes) * wts, axis=1))))
    B = np.concatenate(([0.0], np.cumsum(np.sum(xbar_dot * np.cos(w * nodes) * wts, axis=1))))
    delta = np.sin(w * t) * A + np.cos(w * t) * B

    amp = a * np.sqrt(2.0 * motion_E / (hbar * w))
    Delta = amp * np.cos(w * t + motion_psi)
    return {"t": t, "x": xbar - delta + Delta, "xbar": xbar, "delta": delta, "Delta": Delta}


def ode_trajectory(pulse, trap, motion_E, motion_psi, species, n=2001,
                   rtol=1e-12, atol=1e-14):
    """Direct integration of x'' + omega^2 x = omega^2 xbar(t) (DOP853).

    Dimensionless form chi'' + chi = xi f(s/omega), s = omega t, chi = x/a,
    with the same initial conditions as analytic_trajectory.  Returns a dict
    with keys t and x for comparison against the closed form.
    """
    w = trap.omega
    a = trap.ground_state_size(species)
    s0, s1 = w * pulse.t_start, w * pulse.t_stop
    amp = np.sqrt(2.0 * motion_E / (hbar * w))

    def rhs(s, y):
        drive = pulse.xi * np.exp(-(s / (w * pulse.tau)) ** 2)
        return [y[1], -y[0] + drive]

    chi0 = pulse.xi * np.exp(-(s0 / (w * pulse.tau)) ** 2) + amp * np.cos(s0 + motion_psi)
    dchi0 = -amp * np.sin(s0 + motion_psi)
    s_eval = np.linspace(s0, s1, n)
    sol = solve_ivp(rhs, (s0, s1), [chi0, dchi0], t_eval=s_eval,
                    method="DOP853", rtol=rtol, atol=atol)
    if not sol.success:
        raise RuntimeError("trajectory integration failed: " + sol.message)
    return {"t": s_eval / w, "x": a * sol.y[0], "v": a * w * sol.y[1]}


def free_oscillation_energy_drift(trap, n_periods=100, rtol=1e-12, atol=1e-14):
    """Relative energy drift of the integrator on a free oscillation (no drive)."""
    def rhs(s, y):
        return [y[1], -y[0]]

    s1 = 2.0 * np.pi * n_periods
    sol = solve_ivp(rhs, (0.0, s1), [1.0, 0.0], method="DOP853",
                    rtol=rtol, atol=atol, dense_output=True)
    y = sol.sol(np.linspace(0.0, s1, 64 * n_periods + 1))
    E = 0.5 * (y[0] ** 2 + y[1] ** 2)
    return float(np.max(np.abs(E - E[0])) / E[0])


# -- adiabaticity ---------------------------------------------------------------

def adiabaticity_metric(pulse, omega):
    """Spectral weight of the pulse at the trap frequency.

    |integral of f'(t) e^{i omega t} dt| / (omega * integral of f(t) dt),
    which for the Gaussian envelope is exactly exp(-(omega tau / 2)^2).
    Small values mean the push is adiabatic and the residual oscillation
    driven by the pulse is negligible.
    """
    return float(np.exp(-(omega * pulse.tau / 2.0) ** 2))


def adiabaticity_metric_quadrature(pulse, omega):
    """The same metric by direct quadrature over the pulse window (oracle)."""
    re = quad(lambda t: pulse.envelope_dot(t) * np.cos(omega * t),
              pulse.t_start, pulse.t_stop, limit=400)[0]
    im = quad(lambda t: pulse.envelope_dot(t) * np.sin(omega * t),
              pulse.t_start, pulse.t_stop, limit=400)[0]
    norm = omega * quad(pulse.envelope, pulse.t_start, pulse.t_stop, limit=400)[0]
    return float(np.hypot(re, im) / norm)
