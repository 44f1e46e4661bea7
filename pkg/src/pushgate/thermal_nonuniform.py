"""Gate errors from thermal sampling of a non-uniform push force.

A thermally moving ion samples the beam profile over a Gaussian position
spread sigma = sqrt(k_B T / m omega^2), so the push amplitude xi and with it
the gate angle theta ~ xi^2 fluctuate shot to shot.  The echo does not help:
the fluctuation is common to both pulse pairs.  This module evaluates the
moments <xi^n> of the sampled amplitude for the traveling-wave and
standing-wave geometries (power series and exact closed forms, with direct
quadrature as the oracle) and folds them into the worst-case echo fidelity,
including the cross terms with the thermal Coulomb fluctuation Lambda.

The standing wave has a temperature floor: once k sigma >> 1 the ion
averages the full intensity pattern, and at k z0 = pi/4, 2 theta0 = pi the
fidelity bottoms out at 1 - pi^2/128 ~ 0.9229 regardless of temperature.

beta denotes k_B T / hbar omega throughout.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .constants import k_B
from .dipole_force import TRAVELING


def position_sigma(species, trap, T):
    """Thermal position spread sigma = sqrt(k_B T / m omega^2)."""
    return np.sqrt(k_B * T / species.mass) / trap.omega


def lamb_dicke(species, trap, nbar):
    """Lamb-Dicke check: eta = k a / sqrt2; requires eta^2 nbar < 0.1.

    Returns (eta, eta^2 nbar, ok).  (k sigma)^2 = 2 eta^2 nbar links the
    position spread to the standing-wave pattern scale.
    """
    eta = species.k_laser * trap.ground_state_size(species) / np.sqrt(2.0)
    x = eta ** 2 * nbar
    return float(eta), float(x), bool(x < 0.1)


# -- sampled-amplitude profiles ------------------------------------------------

def xi_profile(laser, species, xi0, x):
    """Push amplitude seen by an ion displaced by x along the profile axis.

    traveling: xi0 (x0 - x)/x0 * exp(-2 (x^2 - 2 x0 x)/w^2)
    standing:  xi0 sin[2k(z0 - z)] / sin(2 k z0)

    Both normalize to xi0 at x = 0.
    """
    x = np.asarray(x, dtype=float)
    if laser.mode == TRAVELING:
        w = laser.waist
        return xi0 * (laser.x0 - x) / laser.x0 * np.exp(-2.0 * (x ** 2 - 2.0 * laser.x0 * x) / w ** 2)
    k = laser.wavenumber(species)
    return xi0 * np.sin(2.0 * (laser.kz0 - k * x)) / np.sin(2.0 * laser.kz0)


@dataclass(frozen=True)
class XiMoments:
    """Moments <xi^2>, <xi^4>, <xi^6>, <xi^8> of the sampled push amplitude."""
    m2: float
    m4: float
    m6: float
    m8: float
    xi0: float
    source: str = "series"


def _tw_coeffs(R):
    """Series coefficients of <xi^n>/xi0^n = 1 + r^2 A_n + r^4 B_n, r = 2 sigma/w, R = 2 x0/w."""
    A = {
        2: 1.0 / R ** 2 + 2.0 * R ** 2 - 5.0,
        4: 6.0 / R ** 2 + 8.0 * R ** 2 - 18.0,
        6: 15.0 / R ** 2 + 18.0 * R ** 2 - 39.0,
        8: 28.0 / R ** 2 + 32.0 * R ** 2 - 68.0,
    }
    B = {
        2: -3.0 / R ** 2 + 39.0 / 2.0 - 14.0 * R ** 2 + 2.0 * R ** 4,
        4: 3.0 / R ** 4 - 84.0 / R ** 2 + 246.0 - 176.0 * R ** 2 + 32.0 * R ** 4,
        6: 45.0 / R ** 4 - 495.0 / R ** 2 + 2295.0 / 2.0 - 810.0 * R ** 2 + 162.0 * R ** 4,
        8: 210.0 / R ** 4 - 1680.0 / R ** 2 + 3480.0 - 2432.0 * R ** 2 + 512.0 * R ** 4,
    }
    return A, B


def xi_moments_tw(xi0, waist, x0, sigma):
    """Traveling-wave moments, power series in r = 2 sigma / w through r^4.

    Valid for r well below one; warns above r = 0.3 where the truncation
    error grows past the percent level.  Requires x0 != 0.
    """
    if x0 == 0.0:
        raise ValueError("traveling-wave moments need a nonzero beam offset x0")
    r = 2.0 * sigma / waist
    R = 2.0 * x0 / waist
    if r > 0.3:
        warnings.warn("position spread r = 2 sigma/w > 0.3: series moments inaccurate")
    A, B = _tw_coeffs(R)
    vals = {n: xi0 ** n * (1.0 + r ** 2 * A[n] + r ** 4 * B[n]) for n in (2, 4, 6, 8)}
    return XiMoments(m2=vals[2], m4=vals[4], m6=vals[6], m8=vals[8], xi0=xi0,
                     source="series")


def xi_moments_sw(xi0, kz0, k, sigma):
    """Standing-wave moments, exact for a Gaussian position spread.

    <xi^2>/xi0^2 = [1 - E8 c4] / (2 s^2)
    <xi^4>/xi0^4 = [3 - 4 E8 c4 + E32 c8] / (8 s^4)
    <xi^6>/xi0^6 = [10 - 15 E8 c4 + 6 E32 c8 - E72 c12] / (32 s^6)
    <xi^8>/xi0^8 = [35 - 56 E8 c4 + 28 E32 c8 - 8 E72 c12 + E128 c16] / (128 s^8)

    with s = sin(2 k z0), c_j = cos(j k z0), E_m = exp(-m (k sigma)^2).
    """
    s = np.sin(2.0 * kz0)
    if abs(s) < 1e-9:
        raise ValueError("standing-wave moments need sin(2 k z0) != 0")
    ks2 = (k * sigma) ** 2
    E = lambda m: np.exp(-m * ks2)
    c = lambda j: np.cos(j * kz0)
    m2 = xi0 ** 2 / (2.0 * s ** 2) * (1.0 - E(8) * c(4))
    m4 = xi0 ** 4 / (8.0 * s ** 4) * (3.0 - 4.0 * E(8) * c(4) + E(32) * c(8))
    m6 = xi0 ** 6 / (32.0 * s ** 6) * (10.0 - 15.0 * E(8) * c(4) + 6.0 * E(32) * c(8)
                                       - E(72) * c(12))
    m8 = xi0 ** 8 / (128.0 * s ** 8) * (35.0 - 56.0 * E(8) * c(4) + 28.0 * E(32) * c(8)
                                        - 8.0 * E(72) * c(12) + E(128) * c(16))
    return XiMoments(m2=m2, m4=m4, m6=m6, m8=m8, xi0=xi0, source="closed")


def xi_moments_quadrature(laser, species, xi0, sigma):
    """Moments by direct Gaussian quadrature of the profile (oracle)."""
    lim = max(10.0 * sigma, 1e-12)

    def moment(n):
        val, _ = quad(lambda x: xi_profile(laser, species, xi0, x) ** n
                      * np.exp(-0.5 * (x / sigma) ** 2) / (sigma * np.sqrt(2.0 * np.pi)),
                      -lim, lim, limit=400)
        return val

    return XiMoments(m2=moment(2), m4=moment(4), m6=moment(6), m8=moment(8),
                     xi0=xi0, source="quadrature")


# -- fidelity -------------------------------------------------------------------

def fidelity_nonuniform_full(theta0, moments, a_over_d, beta):
    """Worst-case echo fidelity with thermal force sampling (master form).

    1 - F = (theta0^2 / 4 xi0^4) {
              [m4 - m2^2]
            + (a/d)^2 [ 24 beta (m4 - m2^2) + sqrt2 (m6 - m2 m4) ]
            + (a/d)^4 [ (12 beta)^2 (2 m4 - m2^2)
                        + 12 sqrt2 beta (m6 - m2 m4) + (m8 - m4^2)/2 ] }

    exact for the quadratic phase model with independent Gaussian position
    and thermal (Lambda) fluctuations; it contains the uniform-force echo
    result as the (a/d)^4 (12 beta)^2 m2^2-scale piece when the moments
    collapse to powers of xi0.
    """
    m2, m4, m6, m8 = moments.m2, moments.m4, moments.m6, moments.m8
    r2 = a_over_d ** 2
    var = m4 - m2 ** 2
    bracket = (var
               + r2 * (24.0 * beta * var + np.sqrt(2.0) * (m6 - m2 * m4))
               + r2 ** 2 * ((12.0 * beta) ** 2 * (2.0 * m4 - m2 ** 2)
                            + 12.0 * np.sqrt(2.0) * beta * (m6 - m2 * m4)
                            + 0.5 * (m8 - m4 ** 2)))
    return float(1.0 - theta0 ** 2 / (4.0 * moments.xi0 ** 4) * bracket)


def fidelity_tw_series(theta0, a, d, waist, x0, beta):
    """Traveling-wave echo fidelity, series form at spread sigma = a sqrt(beta).

    1 - F = (6 theta0 beta)^2 (a/d)^4
            + (2 theta0/3)(6 theta0 beta)(a/w)^2 (2x0/w - w/2x0)^2
            + (2/9)(6 theta0 beta)^2 (a/w)^4 Q(2x0/w)

    with Q(y) = 12 y^4 - 64 y^2 + 89 - 34/y^2 + 1/y^4; the geometric middle
    term vanishes at the optimal offset x0 = w/2, where Q = 4.
    """
    y = 2.0 * x0 / waist
    g = 6.0 * theta0 * beta
    mid = y - 1.0 / y
    return float(1.0 - (g ** 2 * (a / d) ** 4
                        + (2.0 * theta0 / 3.0) * g * (a / waist) ** 2 * mid ** 2
                        + (2.0 / 9.0) * g ** 2 * (a / waist) ** 4 * _q_poly(y)))


def _q_poly(y):
    """Q(y) = 12 y^4 - 64 y^2 + 89 - 34/y^2 + 1/y^4 (Q(1) = 4)."""
    return 12.0 * y ** 4 - 64.0 * y ** 2 + 89.0 - 34.0 / y ** 2 + 1.0 / y ** 4


def fidelity_sw_closed(theta0, k_sigma_sq):
    """Standing-wave echo fidelity at the optimal offset k z0 = pi/4.

    F = 1 - (theta0^2/32) {1 - exp[-16 (k sigma)^2]}^2, keeping the leading
    force-sampling term.  Monotone in temperature with the floor
    1 - theta0^2/32 (1 - pi^2/128 ~ 0.922894 for a pi gate) as k sigma -> inf.
    """
    return float(1.0 - theta0 ** 2 / 32.0 * (-np.expm1(-16.0 * k_sigma_sq)) ** 2)


def fidelity_sw_floor(theta0, kz0):
    """High-temperature fidelity floor 1 - theta0^2 / (32 sin^4 2 k z0)."""
    s = np.sin(2.0 * kz0)
    if abs(s) < 1e-9:
        raise ValueError("floor undefined at a node: sin(2 k z0) = 0")
    return float(1.0 - theta0 ** 2 / (32.0 * s ** 4))


# -- Monte Carlo oracle ----------------------------------------------------------

def mc_nonuniform_echo(species, trap, laser, ensemble, theta0, xi0, samples,
                       seed=None, workers=1, moments=None):
    """Monte Carlo check of the master fidelity: (mean infidelity, sem).

    Per sample: position x ~ N(0, sigma^2) sets xi = xi_profile(x), the
    thermal draws set Lambda, the realized gate angle is

        v = (theta0/xi0^2) [xi^2 + (a/d)^2 (xi^4/sqrt2 + 6 xi^2 Lambda)]

    and the worst case infidelity of the echoed error is sin^2((v - vbar)/2)
    with vbar the ensemble mean from the moments (quadrature by default).
    """
    from . import _mc

    beta = ensemble.kT_over_hw(trap.omega)
    sigma = position_sigma(species, trap, ensemble.T)
    if moments is None:
        moments = xi_moments_quadrature(laser, species, xi0, sigma)
    a_over_d = trap.ground_state_size(species) / trap.d
    r2 = a_over_d ** 2
    scale = theta0 / xi0 ** 2
    vbar = scale * (moments.m2 + r2 * (moments.m4 / np.sqrt(2.0)
                                       + 12.0 * beta * moments.m2))
    seed = ensemble.seed if seed is None else seed

    def run(start, count):
        E1, E2, psi1, psi2, u4 = _mc.thermal_draws(seed, start, count, beta)
        x = _mc.normal_from_uniform(u4, sigma)
        xi = xi_profile(laser, species, xi0, x)
        lam = E1 + E2 - 2.0 * np.sqrt(E1 * E2) * np.cos(psi1 - psi2)
        v = scale * (xi ** 2 + r2 * (xi ** 4 / np.sqrt(2.0) + 6.0 * xi ** 2 * lam))
        infid = np.sin(0.5 * (v - vbar)) ** 2
        return infid.sum(), (infid ** 2).sum(), infid.size

    parts = _mc.map_chunks(run, samples, workers=workers)
    s = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    n = sum(p[2] for p in parts)
    mean = s / n
    var = max(s2 / n - mean ** 2, 0.0)
    return float(mean), float(np.sqrt(var / n))
