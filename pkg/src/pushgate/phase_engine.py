"""Dynamical phases of the pushed two-ion phase gate.

A state-dependent push displaces each ion by xbar(t) = a xi f(t) when its
qubit occupies the pushed state.  Over one pulse each joint state (alpha,
beta) acquires a phase Theta_ab made of per-ion kinetic and potential parts
plus the Coulomb interaction expanded in powers of (relative displacement)/d.
The two-qubit gate angle is the combination

    vartheta = Theta_00 - Theta_01 - Theta_10 + Theta_11,

to which only the Coulomb terms contribute; everything single-ion cancels.
Thermal motion makes the fourth-order Coulomb term fluctuate through
Lambda = [E1 + E2 - 2 sqrt(E1 E2) cos(psi1 - psi2)] / hbar omega, which sets
the fidelity after the spin echo.  Closed forms below are leading order in
the Lamb-Dicke style ratios a/d and 1/(omega tau); Gauss-Legendre time
quadrature of the exact integrands and per-sample Monte Carlo serve as
independent oracles.

theta denotes the leading-order gate angle sqrt(pi/8) eps (omega tau) xi^2
per pulse pair; the spin-echo sequence applies the gate twice, so the
default target is 2 theta0 = pi with theta0 = pi/2 per application.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from . import _mc
from .constants import hbar, k_B
from .trap_dynamics import coulomb_parameter

SQRT_PI_8 = np.sqrt(np.pi / 8.0)


@lru_cache(maxsize=8)
def _gauss_nodes(n):
    # scipy's Newton-iteration nodes; numpy's leggauss solves a dense
    # eigenproblem and takes ~30 s at n = 6000
    x, w = roots_legendre(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class GateGeometry:
    """Force geometry: laser offset lengths s1, s2 (m) and relative direction.

    s_j is the effective displacement-to-intensity offset of the beam at ion
    j (see geometry_to_s); direction2 = +1 pushes both ions the same way,
    -1 pushes ion 2 opposite to ion 1.
    """
    s1: float = 0.0
    s2: float = 0.0
    direction2: int = 1

    def __post_init__(self):
        if self.direction2 not in (-1, 1):
            raise ValueError("direction2 must be +1 (same push) or -1 (reversed)")


@dataclass
class PhaseSet:
    """All phase contributions of one pulse pair, resolved by joint state.

    Arrays are indexed by occupancy: phi_I[occ] etc. for single-ion parts,
    coulomb[alpha, beta, n-1] for the interaction orders n = 1..4, and
    theta[alpha, beta] for the totals.
    """
    phi_I: np.ndarray        # kinetic, adiabatic part (per occupancy)
    phi_II_1: np.ndarray     # kinetic, thermal interference, ion 1
    phi_II_2: np.ndarray
    phi_pot_1: np.ndarray    # potential offset part, ion 1
    phi_pot_2: np.ndarray
    coulomb: np.ndarray      # (2, 2, 4)
    theta: np.ndarray        # (2, 2) totals
    Lambda: float

    @property
    def gate_angle(self):
        t = self.theta
        return float(t[0, 0] - t[0, 1] - t[1, 0] + t[1, 1])


# -- single-ion phases --------------------------------------------------------

def kinetic_phases(pulse, trap, E, psi, occupancy):
    """Kinetic phase of one pushed ion: (adiabatic, thermal-interference).

    phi_I  = -occ^2 xi^2 sqrt(pi/8) / (omega tau)
    phi_II = -occ (omega tau) xi e^{-(omega tau)^2/2} sqrt(2 pi E / hbar omega) cos psi

    E in joules.  phi_II is exponentially small for an adiabatic pulse but
    fluctuates with the thermal phase psi.
    """
    wt = trap.omega * pulse.tau
    phi_i = -occupancy ** 2 * pulse.xi ** 2 * SQRT_PI_8 / wt
    n2 = 2.0 * np.pi * E / (hbar * trap.omega)
    phi_ii = -occupancy * wt * pulse.xi * np.exp(-0.5 * wt ** 2) * np.sqrt(n2) * np.cos(psi)
    return phi_i, phi_ii


def potential_phase(pulse, trap, species, s, occupancy, direction=1):
    """Potential phase of one pushed ion with force-offset length s.

    sqrt(pi/8) occ (omega tau) xi^2 - direction * sqrt(pi) occ (omega tau) xi (s/a).
    The linear-in-s term changes sign when the push direction is reversed.
    """
    wt = trap.omega * pulse.tau
    a = trap.ground_state_size(species)
    return (SQRT_PI_8 * occupancy * wt * pulse.xi ** 2
            - direction * np.sqrt(np.pi) * occupancy * wt * pulse.xi * (s / a))


# -- Coulomb interaction phases -------------------------------------------------

def motional_lambda(trap, motion):
    """Lambda = [E1 + E2 - 2 sqrt(E1 E2) cos(psi1 - psi2)] / hbar omega."""
    hw = hbar * trap.omega
    return (motion.E1 + motion.E2
            - 2.0 * np.sqrt(motion.E1 * motion.E2) * np.cos(motion.psi1 - motion.psi2)) / hw


def theta_lead(pulse, trap, species):
    """Leading-order gate angle per pulse pair: sqrt(pi/8) eps (omega tau) xi^2."""
    eps = coulomb_parameter(species, trap)
    return SQRT_PI_8 * eps * trap.omega * pulse.tau * pulse.xi ** 2


def gate_time_for_angle(theta, trap, species, xi):
    """Pulse width tau giving leading-order gate angle theta at push amplitude xi."""
    eps = coulomb_parameter(species, trap)
    if eps <= 0 or xi == 0:
        raise ValueError("need positive coupling and nonzero push amplitude")
    return theta / (SQRT_PI_8 * eps * trap.omega * xi ** 2)


def coulomb_phases(pulse, trap, species, Lambda, alpha, beta, direction2=1):
    """Interaction phases phi^(n), n = 1..4, for joint state (alpha, beta).

    With g = alpha - direction2 * beta and tb = sqrt(pi/8) eps (omega tau):

        phi^(1) = -tb xi   g   (d/a) / sqrt(2)
        phi^(2) = -tb xi^2 g^2 / 2
        phi^(3) = -tb (a/d)   [g^3 xi^3 / sqrt(6) + 3 g xi Lambda / sqrt(2)]
        phi^(4) = -tb (a/d)^2 [g^4 xi^4 / sqrt(8) + 3 g^2 xi^2 Lambda]

    Pure-thermal contributions (independent of alpha, beta) are a common
    phase of all four joint states and are excluded; they never reach the
    gate angle or any correctable phase difference.
    """
    eps = coulomb_parameter(species, trap)
    a = trap.ground_state_size(species)
    r = a / trap.d
    wt = trap.omega * pulse.tau
    tb = SQRT_PI_8 * eps * wt
    g = alpha - direction2 * beta
    xi = pulse.xi
    return np.array([
        -tb * xi * g / (r * np.sqrt(2.0)),
        -tb * xi ** 2 * g ** 2 / 2.0,
        -tb * r * (g ** 3 * xi ** 3 / np.sqrt(6.0) + 3.0 * g * xi * Lambda / np.sqrt(2.0)),
        -tb * r ** 2 * (g ** 4 * xi ** 4 / np.sqrt(8.0) + 3.0 * g ** 2 * xi ** 2 * Lambda),
    ])


def coulomb_phase_quadrature(pulse, trap, species, motion, alpha, beta, n,
                             direction2=1, n_nodes=6000, phase_grid=16):
    """Time-quadrature oracle for the order-n interaction phase.

    Integrates -(ell / hbar d^{n+1}) [u(t)^n - dD(t)^n] over the pulse window
    with u = a xi f(t) g + dD and dD = Delta_1 - Delta_2 the thermal relative
    motion, averaged over a common offset applied to both thermal phases.
    The common-phase average (uniform grid, exact for trigonometric
    polynomials of the orders present) removes the pulse-edge interference
    terms that the secular closed forms drop; subtracting dD^n removes the
    pure-thermal common phase.
    """
    w = trap.omega
    a = trap.ground_state_size(species)
    g = alpha - direction2 * beta
    hw = hbar * w
    amp1 = a * np.sqrt(2.0 * motion.E1 / hw)
    amp2 = a * np.sqrt(2.0 * motion.E2 / hw)

    x, wts = _gauss_nodes(n_nodes)
    t = 0.5 * (pulse.t_stop - pulse.t_start) * x + 0.5 * (pulse.t_stop + pulse.t_start)
    wts = 0.5 * (pulse.t_stop - pulse.t_start) * wts
    drive = a * pulse.xi * pulse.envelope(t) * g

    total = 0.0
    offsets = 2.0 * np.pi * np.arange(phase_grid) / phase_grid
    for c in offsets:
        dD = (amp1 * np.cos(w * t + motion.psi1 + c)
              - amp2 * np.cos(w * t + motion.psi2 + c))
        integrand = (drive + dD) ** n - dD ** n
        total += np.sum(integrand * wts)
    total /= phase_grid
    return float(-species.ell / (hbar * trap.d ** (n + 1)) * total)


# -- assembly -------------------------------------------------------------------

def _assemble(pulse, trap, species, geometry, Lambda, phi_ii_1, phi_ii_2):
    occ = np.array([0.0, 1.0])
    wt = trap.omega * pulse.tau
    phi_i = -occ ** 2 * pulse.xi ** 2 * SQRT_PI_8 / wt
    pot1 = np.array([potential_phase(pulse, trap, species, geometry.s1, o, 1.0)
                     for o in occ])
    pot2 = np.array([potential_phase(pulse, trap, species, geometry.s2, o,
                                     geometry.direction2) for o in occ])
    cou = np.zeros((2, 2, 4))
    theta = np.zeros((2, 2))
    for al in (0, 1):
        for be in (0, 1):
            cou[al, be] = coulomb_phases(pulse, trap, species, Lambda, al, be,
                                         geometry.direction2)
            theta[al, be] = (phi_i[al] + phi_ii_1[al] + pot1[al]
                             + phi_i[be] + phi_ii_2[be] + pot2[be]
                             + cou[al, be].sum())
    return PhaseSet(phi_I=phi_i, phi_II_1=phi_ii_1, phi_II_2=phi_ii_2,
                    phi_pot_1=pot1, phi_pot_2=pot2, coulomb=cou, theta=theta,
                    Lambda=float(Lambda))


def phase_set(pulse, trap, species, motion, geometry=None):
    """All phases of one pulse pair for a specific motional state."""
    geometry = geometry or GateGeometry()
    lam = motional_lambda(trap, motion)
    ii1 = np.array([kinetic_phases(pulse, trap, motion.E1, motion.psi1, o)[1]
                    for o in (0.0, 1.0)])
    ii2 = np.array([kinetic_phases(pulse, trap, motion.E2, motion.psi2, o)[1]
                    for o in (0.0, 1.0)])
    return _assemble(pulse, trap, species, geometry, lam, ii1, ii2)


def thermal_mean_phases(pulse, trap, species, ensemble, geometry=None):
    """Ensemble-average phases: <E> = k_B T, <cos psi> = 0, <Lambda> = 2 k_B T / hbar omega."""
    geometry = geometry or GateGeometry()
    lam = 2.0 * ensemble.kT_over_hw(trap.omega)
    zero = np.zeros(2)
    return _assemble(pulse, trap, species, geometry, lam, zero, zero)


def gate_angle(pulse, trap, species, motion, geometry=None):
    """vartheta = Theta_00 - Theta_01 - Theta_10 + Theta_11 for one motional state."""
    return phase_set(pulse, trap, species, motion, geometry).gate_angle


def vartheta_closed(pulse, trap, species, Lambda):
    """Same-direction gate angle: theta [1 + (a/d)^2 (xi^2/sqrt(2) + 6 Lambda)]."""
    th = theta_lead(pulse, trap, species)
    r = trap.ground_state_size(species) / trap.d
    return th * (1.0 + r ** 2 * (pulse.xi ** 2 / np.sqrt(2.0) + 6.0 * Lambda))


def vartheta_bar_closed(pulse, trap, species, kT_over_hw):
    """Thermal-mean gate angle: theta [1 + (a/d)^2 (xi^2/sqrt(2) + 12 kT/hw)]."""
    return vartheta_closed(pulse, trap, species, 2.0 * kT_over_hw)


# -- closed-form fidelities -----------------------------------------------------

def fidelity_no_echo_closed(pulse, trap, species, kT_over_hw):
    """Worst-case fidelity of a single corrected gate against thermal spread.

    1 - (6 theta kT/hw)^2 [(a/d)^2 / xi^2 - 2 (a/d)^4]: the third-order
    Coulomb fluctuation dominates through the single-qubit phases, which a
    plain corrected gate does not cancel.
    """
    th = theta_lead(pulse, trap, species)
    r = trap.ground_state_size(species) / trap.d
    c = 6.0 * th * kT_over_hw
    return 1.0 - c ** 2 * (r ** 2 / pulse.xi ** 2 - 2.0 * r ** 4)


def fidelity_echo_closed(pulse, trap, species, kT_over_hw):
    """Worst-case fidelity of the echo sequence: 1 - (6 theta kT/hw)^2 (a/d)^4.

    Only the fluctuation of the two-qubit angle itself survives the echo.
    """
    th = theta_lead(pulse, trap, species)
    r = trap.ground_state_size(species) / trap.d
    return 1.0 - (6.0 * th * kT_over_hw * r ** 2) ** 2


# -- Monte Carlo oracles ----------------------------------------------------------

def _batch_min_infidelity(phases):
    """Exact worst-case infidelity 1 - F for a batch of 4-phase diagonal errors.

    Vectorized version of the simplex face enumeration: 6 edges in closed
    form, 4 triple faces and the interior by batched pseudo-inverse solves of
    the bordered stationarity system, with feasibility checks.
    """
    th = np.asarray(phases, dtype=float)
    m = th.shape[0]
    S = np.sin(0.5 * (th[:, :, None] - th[:, None, :])) ** 2
    best = np.zeros(m)
    # edges: maximum S_ij / 4
    iu = np.triu_indices(4, k=1)
    best = np.max(S[:, iu[0], iu[1]], axis=1) / 4.0

    def face(idx):
        k = len(idx)
        A = np.zeros((m, k + 1, k + 1))
        A[:, :k, :k] = S[np.ix_(np.arange(m), idx, idx)]
        A[:, :k, k] = -1.0
        A[:, k, :k] = 1.0
        b = np.zeros(k + 1)
        b[k] = 1.0
        sol = np.linalg.pinv(A) @ b
        p = sol[:, :k]
        resid = np.max(np.abs(A @ sol[:, :, None] - b[:, None]), axis=(1, 2))
        ok = (resid < 1e-9) & (p.min(axis=1) > -1e-12)
        p = np.clip(p, 0.0, None)
        s = p.sum(axis=1, keepdims=True)
        ok &= (s[:, 0] > 0)
        p = np.where(s > 0, p / np.where(s > 0, s, 1.0), p)
        f = 0.5 * np.einsum("mi,mij,mj->m", p, A[:, :k, :k], p)
        return np.where(ok, f, 0.0)

    for idx in ([0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3], [0, 1, 2, 3]):
        best = np.maximum(best, face(list(idx)))
    return np.clip(4.0 * best, 0.0, 1.0)


def _mc_chunks(pulse, trap, species, ensemble, samples, seed, workers, fn):
    seed = ensemble.seed if seed is None else seed
    beta = ensemble.kT_over_hw(trap.omega)

    def run(start, count):
        E1, E2, psi1, psi2, u4 = _mc.thermal_draws(seed, start, count, beta)
        return fn(E1, E2, psi1, psi2, u4)

    return _mc.map_chunks(run, samples, workers=workers)


def _accumulate(parts):
    """Combine per-chunk (sum, sumsq, count) into (mean, sem) in chunk order."""
    s = 0.0
    s2 = 0.0
    n = 0
    for a, b, c in parts:
        s += a
        s2 += b
        n += c
    mean = s / n
    var = max(s2 / n - mean ** 2, 0.0)
    sem = np.sqrt(var / n)
    return float(mean), float(sem)


def mc_gate_angle(pulse, trap, species, ensemble, samples, seed=None, workers=1):
    """Monte Carlo mean of the gate angle over the thermal ensemble: (mean, sem)."""
    th = theta_lead(pulse, trap, species)
    r = trap.ground_state_size(species) / trap.d

    def fn(E1, E2, psi1, psi2, u4):
        lam = E1 + E2 - 2.0 * np.sqrt(E1 * E2) * np.cos(psi1 - psi2)
        v = th * (1.0 + r ** 2 * (pulse.xi ** 2 / np.sqrt(2.0) + 6.0 * lam))
        return v.sum(), (v ** 2).sum(), v.size

    return _accumulate(_mc_chunks(pulse, trap, species, ensemble, samples, seed,
                                  workers, fn))


def mc_echo_infidelity(pulse, trap, species, ensemble, samples, seed=None, workers=1):
    """Monte Carlo worst-case infidelity of the echo sequence: (mean, sem).

    Per sample the residual two-qubit deviation is d_vartheta = vartheta -
    vartheta_bar and the echoed error operator diag{e^{i d}, 1, 1, e^{i d}}
    has worst-case infidelity sin^2(d/2) exactly.
    """
    beta = ensemble.kT_over_hw(trap.omega)
    vbar = vartheta_bar_closed(pulse, trap, species, beta)

    def fn(E1, E2, psi1, psi2, u4):
        lam = E1 + E2 - 2.0 * np.sqrt(E1 * E2) * np.cos(psi1 - psi2)
        v = vartheta_closed(pulse, trap, species, lam)
        infid = np.sin(0.5 * (v - vbar)) ** 2
        return infid.sum(), (infid ** 2).sum(), infid.size

    return _accumulate(_mc_chunks(pulse, trap, species, ensemble, samples, seed,
                                  workers, fn))


def mc_no_echo_infidelity(pulse, trap, species, ensemble, samples, seed=None,
                          workers=1):
    """Monte Carlo worst-case infidelity of a single corrected gate: (mean, sem).

    Per sample the four phase deviations from the thermal mean (including the
    exponentially small kinetic interference terms) feed the exact worst-case
    diagonal fidelity; the minimization is the vectorized simplex enumeration.
    """
    beta = ensemble.kT_over_hw(trap.omega)
    wt = trap.omega * pulse.tau
    th = theta_lead(pulse, trap, species)
    r = trap.ground_state_size(species) / trap.d
    kin = wt * pulse.xi * np.exp(-0.5 * wt ** 2) * np.sqrt(2.0 * np.pi)
    A3 = 3.0 * th * r / (pulse.xi * np.sqrt(2.0))
    B4 = 3.0 * th * r ** 2

    def fn(E1, E2, psi1, psi2, u4):
        lam = E1 + E2 - 2.0 * np.sqrt(E1 * E2) * np.cos(psi1 - psi2)
        dlam = lam - 2.0 * beta
        ii1 = -kin * np.sqrt(E1) * np.cos(psi1)
        ii2 = -kin * np.sqrt(E2) * np.cos(psi2)
        d00 = np.zeros_like(dlam)
        d01 = ii2 + (A3 - B4) * dlam
        d10 = ii1 + (-A3 - B4) * dlam
        d11 = ii1 + ii2  # both pushed together: no relative displacement
        infid = _batch_min_infidelity(np.stack([d00, d01, d10, d11], axis=1))
        return infid.sum(), (infid ** 2).sum(), infid.size

    return _accumulate(_mc_chunks(pulse, trap, species, ensemble, samples, seed,
                                  workers, fn))
