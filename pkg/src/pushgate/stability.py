"""Single-qubit phase stability and the intensity-noise sweet spot.

The corrected gate relies on estimates of the large single-qubit phases
Phi_1, Phi_2 each ion acquires during a push.  Those phases are steep
functions of the push amplitude xi, so laser-intensity noise turns into
phase noise with sensitivity C = |d Phi / d ln xi|, typically of order
d/(xi a) ~ hundreds.  The beam geometry offset s adds a term linear in xi;
choosing s so that d Phi / d xi = 0 at the operating point makes the phase
stationary against intensity fluctuations -- the sweet spot.  For given beam
geometry the same condition fixes the trap frequency omega_sweet.

All expressions are the thermal means (E -> k_B T, <cos psi> -> 0,
Lambda -> 2 k_B T / hbar omega).  beta denotes k_B T / hbar omega.
theta = sqrt(pi/8) eps (omega tau) xi^2 is the leading gate angle.
"""

import numpy as np

from .constants import alpha_fs, c_light, hbar
from .dipole_force import TRAVELING, push_displacement_limit
from .phase_engine import SQRT_PI_8
from .trap_dynamics import coulomb_parameter


def _params(pulse, trap, species):
    eps = coulomb_parameter(species, trap)
    a = trap.ground_state_size(species)
    return eps, a, a / trap.d, trap.omega * pulse.tau


def single_qubit_phase(pulse, trap, species, s, beta, ion=1, direction2=1):
    """Thermal-mean single-qubit phase Phi of one ion during a push pair.

    For ion 1 (offset s):

        Phi_1 = theta [ -1/(eps (wt)^2) + 1/eps - (s/a) sqrt8/(xi eps)
                        - (d/a)/(xi sqrt2) - 1/2
                        - (a/d)(xi/sqrt6 + 6 beta/(xi sqrt2))
                        - (a/d)^2 (xi^2/sqrt8 + 6 beta) ]

    Ion 2 swaps in its own offset and flips the odd Coulomb terms when the
    pushes are in the same direction; with reversed pushes the Coulomb terms
    match ion 1 and the offset term changes sign instead.
    """
    eps, a, r, wt = _params(pulse, trap, species)
    xi = pulse.xi
    th = SQRT_PI_8 * eps * wt * xi ** 2
    if ion == 1:
        odd = -1.0
        s_sign = -1.0
    elif direction2 == 1:
        odd = +1.0
        s_sign = -1.0
    else:
        odd = -1.0
        s_sign = +1.0
    return th * (-1.0 / (eps * wt ** 2) + 1.0 / eps
                 + s_sign * (s / a) * np.sqrt(8.0) / (xi * eps)
                 + odd * (1.0 / (r * xi * np.sqrt(2.0)))
                 - 0.5
                 + odd * r * (xi / np.sqrt(6.0) + 6.0 * beta / (xi * np.sqrt(2.0)))
                 - r ** 2 * (xi ** 2 / np.sqrt(8.0) + 6.0 * beta))


def dphi_dxi(pulse, trap, species, s, beta, ion=1, direction2=1,
             xi2_derivative=None):
    """Sensitivity of the single-qubit phase to the push amplitude.

    d Phi_1 / d xi = sqrt(pi/8) eps (wt) [ A/eps - (s/a) sqrt8/eps
                     - (d/a)/sqrt2 - (a/d)(3 xi^2/sqrt6 + 6 beta/sqrt2)
                     - (a/d)^2 (sqrt2 xi^3 + 12 beta xi) ]

    with A = [1 - eps/2 - 1/(wt)^2] * d<xi^2>/dxi.  The hook xi2_derivative
    (default xi -> 2 xi) stands in for d<xi^2>/dxi when thermal averaging of
    the squared amplitude modifies the bare derivative; it applies only to
    this leading group, the small (a/d) corrections keep plain derivatives.
    Ion and direction signs as in single_qubit_phase.
    """
    eps, a, r, wt = _params(pulse, trap, species)
    xi = pulse.xi
    dxi2 = 2.0 * xi if xi2_derivative is None else xi2_derivative(xi)
    A = (1.0 - 0.5 * eps - 1.0 / wt ** 2) * dxi2
    if ion == 1:
        odd = -1.0
        s_sign = -1.0
    elif direction2 == 1:
        odd = +1.0
        s_sign = -1.0
    else:
        odd = -1.0
        s_sign = +1.0
    return SQRT_PI_8 * eps * wt * (A / eps
                                   + s_sign * (s / a) * np.sqrt(8.0) / eps
                                   + odd / (r * np.sqrt(2.0))
                                   + odd * r * (3.0 * xi ** 2 / np.sqrt(6.0)
                                                + 6.0 * beta / np.sqrt(2.0))
                                   - r ** 2 * (np.sqrt(2.0) * xi ** 3 + 12.0 * beta * xi))


def sweet_spot(pulse, trap, species, beta, ion=1, direction2=1,
               xi2_derivative=None, order="full"):
    """Beam offset s that makes d Phi / d xi vanish at the operating point.

    order='full' solves the complete sensitivity expression (the offset term
    is linear in s, so the root is explicit); order='leading' keeps only the
    dominant -eps d/4-type term plus the averaging-hook contribution, which
    is the form one would set experimentally.  Ion 1 and ion 2 offsets come
    out with opposite signs.
    """
    eps, a, r, wt = _params(pulse, trap, species)
    xi = pulse.xi
    dxi2 = 2.0 * xi if xi2_derivative is None else xi2_derivative(xi)
    A = (1.0 - 0.5 * eps - 1.0 / wt ** 2) * dxi2
    if ion == 1:
        odd = -1.0
        s_sign = -1.0
    elif direction2 == 1:
        odd = +1.0
        s_sign = -1.0
    else:
        odd = -1.0
        s_sign = +1.0
    lead = -s_sign * (a / np.sqrt(8.0)) * A - s_sign * odd * eps * trap.d / 4.0
    if order == "leading":
        return float(lead)
    if order != "full":
        raise ValueError("order must be 'full' or 'leading'")
    high = (odd * r * (3.0 * xi ** 2 / np.sqrt(6.0) + 6.0 * beta / np.sqrt(2.0))
            - r ** 2 * (np.sqrt(2.0) * xi ** 3 + 12.0 * beta * xi))
    return float(lead - s_sign * (eps * a / np.sqrt(8.0)) * high)


def geometry_to_s(species, laser):
    """Offset length s of a push beam: -(w^2)/(4 x0) traveling, tan(k z0)/(2k) standing.

    s = -V(0)/V'(0) of the dipole potential, the signed distance from the
    trap centre to the zero of the linearized potential.
    """
    if laser.mode == TRAVELING:
        return -laser.waist ** 2 / (4.0 * laser.x0)
    k = laser.wavenumber(species)
    return np.tan(laser.kz0) / (2.0 * k)


def omega_sweet(species, d, s):
    """Trap frequency at which a given beam offset s is the sweet spot.

    From |s| = eps d / 4:  omega = (1/d) sqrt(ell / (m |s|)).
    """
    if s == 0.0:
        raise ValueError("zero beam offset has no sweet-spot frequency")
    return np.sqrt(species.ell / (species.mass * abs(s))) / d


def intensity_noise_infidelity(pulse, trap, species, s, beta, rel_noise,
                               ion=1, direction2=1, xi2_derivative=None):
    """Infidelity from relative intensity noise: [C * (dI/I)]^2.

    The push amplitude tracks the intensity, xi ~ I, so a fractional
    intensity error dI/I shifts the single-qubit phase by C * dI/I with
    C = |d Phi / d ln xi| = xi |d Phi / d xi|.
    """
    C = abs(pulse.xi * dphi_dxi(pulse, trap, species, s, beta, ion=ion,
                                direction2=direction2,
                                xi2_derivative=xi2_derivative))
    return float((C * rel_noise) ** 2)


def speed_constraints(species, trap, laser, pulse):
    """Speed limits of the pushed gate for this geometry.

    Returns a dict with the effective gate speed v = (omega tau) ell sqrt8 /
    (hbar sqrt pi), the push-to-spacing ratio a xi / d = sqrt(omega d / v)
    implied by a pi gate, the minimum adiabaticity omega tau >=
    (d/x_max)^2 (omega d)/(alpha c) allowed by the displacement limit x_max
    of the beam geometry, and whether the operating pulse satisfies it.
    """
    wt = trap.omega * pulse.tau
    v = wt * species.ell * np.sqrt(8.0) / (hbar * np.sqrt(np.pi))
    wd = trap.omega * trap.d
    xmax = push_displacement_limit(species, laser)
    wt_min = (trap.d / xmax) ** 2 * wd / (alpha_fs * c_light)
    return {
        "speed": float(v),
        "xi_a_over_d": float(np.sqrt(wd / v)),
        "omega_tau": float(wt),
        "omega_tau_min": float(wt_min),
        "ok": bool(wt >= wt_min),
        "displacement_limit": float(xmax),
    }
