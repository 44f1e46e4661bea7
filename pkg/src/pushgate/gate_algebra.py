"""Exact two-qubit algebra for diagonal phase gates and spin-echo sequences.

The pushed-ion gate produces a diagonal unitary G = diag{e^{i Theta_ab}} on
the computational basis (|00>, |01>, |10>, |11>).  Local z-rotations turn G
into a controlled-phase gate.  Wrapping two applications of G in simultaneous
pi pulses on both qubits echoes away the large, noisy single-qubit phases and
leaves only the deviation of the two-qubit phase -- this module implements
that algebra exactly on 4x4 matrices, together with the worst-case
(minimum-over-input-states) fidelity of the residual error operator and the
three pi-pulse error models: systematic z-phase errors, over-rotation, and
incoherent bit-flip failure.

Conventions
-----------
Basis order (|00>, |01>, |10>, |11>), qubit 1 = left factor.  Phase vectors
are ordered (Theta_00, Theta_01, Theta_10, Theta_11).  All angles in rad.
Global phases are irrelevant; residuals are reported with the phase of the
first entry divided out.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize


# -- elementary operators ----------------------------------------------------

def z_rotation(theta):
    """Single-qubit rotation about z: Z(theta) = diag(e^{i theta/2}, e^{-i theta/2})."""
    return np.diag([np.exp(0.5j * theta), np.exp(-0.5j * theta)])


def pi_pulse():
    """Perfect pi pulse R = i sigma_y = |0><1| - |1><0|."""
    return np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)


def pi_pulse_pair():
    """Simultaneous pi pulses on both qubits, R (x) R."""
    r = pi_pulse()
    return np.kron(r, r)


def overrotation(eps):
    """Over-rotation error M(eps) = cos(eps/2) 1 - i sin(eps/2) sigma_y.

    A pulse intended as R actually applies R M(eps); M(0) is the identity.
    """
    c, s = np.cos(0.5 * eps), np.sin(0.5 * eps)
    return np.array([[c, -s], [s, c]], dtype=complex)


@dataclass(frozen=True)
class DiagonalGate:
    """Diagonal two-qubit gate diag{e^{i Theta_ab}}.

    phases = (Theta_00, Theta_01, Theta_10, Theta_11) in rad.
    """
    phases: tuple

    def __post_init__(self):
        p = tuple(float(x) for x in self.phases)
        if len(p) != 4 or not all(np.isfinite(p)):
            raise ValueError("need four finite phases")
        object.__setattr__(self, "phases", p)

    @property
    def matrix(self):
        return np.diag(np.exp(1j * np.asarray(self.phases)))

    @property
    def gate_angle(self):
        """Two-qubit phase theta = Theta_00 - Theta_01 - Theta_10 + Theta_11."""
        t = self.phases
        return t[0] - t[1] - t[2] + t[3]

    @classmethod
    def controlled_phase(cls, theta):
        """P_theta = diag{1, 1, 1, e^{i theta}}."""
        return cls((0.0, 0.0, 0.0, float(theta)))


@dataclass(frozen=True)
class PiPulseErrorModel:
    """One of three pi-pulse error sub-models; exactly one is active.

    phase errors: eps1, eps2 with repeat factors p1, p2 in [-1, 1]
    over-rotation: eps with repeat factor p
    bit flips: probabilities zeta1, zeta2 in [0, 1]
    """
    eps1: float = 0.0
    eps2: float = 0.0
    p1: float = 0.0
    p2: float = 0.0
    eps: float = 0.0
    p: float = 0.0
    zeta1: float = 0.0
    zeta2: float = 0.0

    def __post_init__(self):
        active = [self.eps1 != 0.0 or self.eps2 != 0.0,
                  self.eps != 0.0,
                  self.zeta1 != 0.0 or self.zeta2 != 0.0]
        if sum(active) > 1:
            raise ValueError("only one pi-pulse error sub-model may be active")
        for z in (self.zeta1, self.zeta2):
            if not 0.0 <= z <= 1.0:
                raise ValueError("bit-flip probability outside [0, 1]")
        for p in (self.p1, self.p2, self.p):
            if not -1.0 <= p <= 1.0:
                raise ValueError("repeat factor outside [-1, 1]")


def _phases_of(gate):
    if isinstance(gate, DiagonalGate):
        return np.asarray(gate.phases, dtype=float)
    return np.asarray(gate, dtype=float)


# -- local corrections -------------------------------------------------------

def local_correction(gate):
    """Single-qubit z-rotations that reduce a diagonal gate to controlled-phase form.

    Returns (S1, S2, theta, global_phase) with S1 = Z(Theta_10 - Theta_00) on
    qubit 1 and S2 = Z(Theta_01 - Theta_00) on qubit 2, such that

        (S1 (x) S2) G = e^{i global_phase} diag{1, 1, 1, e^{i theta}} .
    """
    t = _phases_of(gate)
    phi1 = t[2] - t[0]
    phi2 = t[1] - t[0]
    theta = t[0] - t[1] - t[2] + t[3]
    global_phase = 0.5 * (t[1] + t[2])
    return z_rotation(phi1), z_rotation(phi2), theta, global_phase


# -- worst-case fidelity of diagonal errors ----------------------------------

def _pair_quadratic(phases):
    """Matrix S_ij = sin^2((theta_i - theta_j)/2) of pairwise phase penalties."""
    th = np.asarray(phases, dtype=float)
    return np.sin(0.5 * (th[:, None] - th[None, :])) ** 2


def _max_quadratic_on_simplex(S):
    """Exact maximum of f(p) = sum_{i<j} p_i p_j S_ij over the probability simplex.

    Enumerates the stationary point on every face (the KKT system restricted
    to the face is linear) plus all vertices.  Exact up to linear-solve
    roundoff; faces with a singular system attain their maximum on a
    sub-face, which is enumerated separately, so they can be skipped.
    """
    n = S.shape[0]
    best = 0.0  # vertices give f = 0
    for m in range(1, 2 ** n):
        idx = [i for i in range(n) if (m >> i) & 1]
        if len(idx) < 2:
            continue
        k = len(idx)
        Sf = S[np.ix_(idx, idx)]
        A = np.zeros((k + 1, k + 1))
        A[:k, :k] = Sf
        A[:k, k] = -1.0
        A[k, :k] = 1.0
        b = np.zeros(k + 1)
        b[k] = 1.0
        try:
            sol = np.linalg.solve(A, b)
        except np.linalg.LinAlgError:
            continue
        p = sol[:k]
        if p.min() < -1e-12:
            continue
        p = np.clip(p, 0.0, None)
        s = p.sum()
        if s <= 0.0:
            continue
        p /= s
        f = 0.5 * p @ Sf @ p
        if f > best:
            best = f
    return best


def fidelity_min_diag(gate):
    """Worst-case fidelity of a diagonal error operator.

    For E = diag{e^{i theta_i}} the overlap <Psi|E|Psi> depends on the state
    only through the populations p_i, so

        F = min over the simplex of |sum_i p_i e^{i theta_i}|^2
          = 1 - 4 max f,    f = sum_{i<j} p_i p_j sin^2((theta_i-theta_j)/2).

    The maximization is exact (stationary point of every simplex face).
    """
    th = _phases_of(gate)
    S = _pair_quadratic(th)
    if not np.all(np.isfinite(S)):
        return fidelity_min_diag_grid(th)
    f = _max_quadratic_on_simplex(S)
    return float(np.clip(1.0 - 4.0 * f, 0.0, 1.0))


def fidelity_min_diag_grid(gate, step=1.0 / 200.0):
    """Brute-force oracle: minimize |sum p_i e^{i theta_i}|^2 on a simplex lattice."""
    th = _phases_of(gate)
    n = int(round(1.0 / step))
    e = np.exp(1j * th)
    jk = np.arange(n + 1)
    J, K = np.meshgrid(jk, jk, indexing="ij")
    best = 1.0
    for i in range(n + 1):
        L = n - i - J - K
        ok = L >= 0
        amp = (i * e[0] + J * e[1] + K * e[2] + np.where(ok, L, 0) * e[3]) / n
        F = np.abs(amp) ** 2
        v = F[ok].min() if ok.any() else 1.0
        if v < best:
            best = v
    return float(best)


def fidelity_two_equal_phases(theta):
    """Closed form for phases (0, theta, theta, 0): F = cos^2(theta/2)."""
    return float(np.cos(0.5 * theta) ** 2)


def fidelity_antisymmetric_phases(phi):
    """Closed form for phases (0, phi, -phi, 0): F = cos^2(phi) for |phi| <= pi/2, else 0."""
    if abs(phi) >= 0.5 * np.pi:
        return 0.0
    return float(np.cos(phi) ** 2)


# -- minimum over all states for a general (non-diagonal) operator -----------

def min_state_overlap(Q, n_grid=360):
    """min over unit states of |<Psi|Q|Psi>|.

    The numerical range W(Q) = {<Psi|Q|Psi>} is convex (Toeplitz-Hausdorff),
    so the distance from the origin is the largest value of the support
    function  h(phi) = lambda_min[(e^{i phi}Q + h.c.)/2]  over phi, clipped
    at zero when the origin lies inside W(Q).
    """
    Q = np.asarray(Q, dtype=complex)

    def support(phi):
        H = 0.5 * (np.exp(1j * phi) * Q + np.exp(-1j * phi) * Q.conj().T)
        return np.linalg.eigvalsh(H)[0]

    phis = np.linspace(0.0, 2.0 * np.pi, n_grid, endpoint=False)
    vals = np.array([support(p) for p in phis])
    k = int(np.argmax(vals))
    # golden-section refinement: the maximum often sits on an eigenvalue
    # crossing, where smooth 1-d minimizers stall at sqrt(eps) accuracy
    a = phis[k] - 2.0 * np.pi / n_grid
    b = phis[k] + 2.0 * np.pi / n_grid
    invphi = 0.5 * (np.sqrt(5.0) - 1.0)
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = support(c), support(d)
    for _ in range(70):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = support(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = support(d)
    return float(max(0.0, vals[k], fc, fd))


def min_state_fidelity(U, target=None):
    """Worst-case fidelity min |<Psi|target^dag U|Psi>|^2 over pure states."""
    E = np.asarray(U, dtype=complex)
    if target is not None:
        E = np.asarray(target, dtype=complex).conj().T @ E
    return min_state_overlap(E) ** 2


# -- spin-echo sequence ------------------------------------------------------

def echo_correction(vartheta_bar):
    """S' = Z1(-vartheta_bar) (x) Z2(-vartheta_bar), the echo phase correction."""
    z = z_rotation(-vartheta_bar)
    return np.kron(z, z)


def echo_sequence_matrix(gate1, gate2, vartheta_bar):
    """Full 4x4 matrix of S' (R G2)(R G1) with perfect pi pulses."""
    R = pi_pulse_pair()
    G1 = DiagonalGate(tuple(_phases_of(gate1))).matrix
    G2 = DiagonalGate(tuple(_phases_of(gate2))).matrix
    return echo_correction(vartheta_bar) @ R @ G2 @ R @ G1


def echo_sequence_residual(gate1, gate2, target):
    """Residual diagonal error of the echo sequence against the intended gate.

    The sequence S'(R G2)(R G1) is measured against P(2*target); for
    G1 = G2 = G the residual is diag{e^{i d_theta}, 1, 1, e^{i d_theta}} with
    d_theta = gate_angle(G) - target, up to a global phase.  The returned
    DiagonalGate has the phase of its first entry divided out.
    """
    U = echo_sequence_matrix(gate1, gate2, target)
    E = DiagonalGate.controlled_phase(2.0 * target).matrix.conj().T @ U
    d = np.diag(E)
    off = E - np.diag(d)
    if np.max(np.abs(off)) > 1e-12:
        raise ValueError("echo residual is not diagonal; inputs must be diagonal gates")
    ph = np.angle(d * np.conj(d[0] / abs(d[0])))
    return DiagonalGate(tuple(ph))


def echo_fidelity(gate1, gate2, target):
    """Worst-case fidelity of the echo sequence with perfect pi pulses."""
    return fidelity_min_diag(echo_sequence_residual(gate1, gate2, target))


def fidelity_no_echo(deltas):
    """Worst-case fidelity of a single corrected gate, given phase deviations.

    deltas are the four deviations dTheta_ab of the realized phases from the
    estimated ones used in the local corrections; the residual error operator
    is diag{e^{i dTheta_ab}} up to a global phase.
    """
    return fidelity_min_diag(deltas)


# -- imperfect pi pulses: systematic z-phase errors ---------------------------

def echo_fidelity_phase_errors(residual_dphi, errs):
    """Fidelity of the echo sequence when the pi pulses carry z-phase errors.

    The first pulse pair adds Z1(eps1) Z2(eps2), the second Z1(p1 eps1)
    Z2(p2 eps2).  Pulled through the sequence exactly, the total residual is

        Z1[(1-p1) eps1] Z2[(1-p2) eps2] E',   E' = diag{e^{i dphi},1,1,e^{i dphi}}

    with dphi the two-qubit phase deviation.  Returns its worst-case fidelity.
    """
    a = (1.0 - errs.p1) * errs.eps1
    b = (1.0 - errs.p2) * errs.eps2
    d = float(residual_dphi)
    phases = (0.5 * (a + b) + d, 0.5 * (a - b), 0.5 * (b - a), -0.5 * (a + b) + d)
    return fidelity_min_diag(phases)


def echo_matrix_phase_errors(gate1, gate2, target, errs):
    """Matrix oracle: the full sequence with z-phase pulse errors, as a 4x4 product."""
    R = pi_pulse_pair()
    G1 = DiagonalGate(tuple(_phases_of(gate1))).matrix
    G2 = DiagonalGate(tuple(_phases_of(gate2))).matrix
    ZA = np.kron(z_rotation(errs.eps1), z_rotation(errs.eps2))
    ZB = np.kron(z_rotation(errs.p1 * errs.eps1), z_rotation(errs.p2 * errs.eps2))
    U = echo_correction(target) @ (R @ ZB) @ G2 @ (R @ ZA) @ G1
    return DiagonalGate.controlled_phase(2.0 * target).matrix.conj().T @ U


# -- imperfect pi pulses: over-rotation ---------------------------------------

def echo_fidelity_overrotation(gate, eps, p, gate_perf=None):
    """Worst-case fidelity with over-rotated pi pulses.

    Both qubits over-rotate by the same angle: the first pulse pair applies
    R M(eps) on each qubit, the second R M(p*eps).  The residual operator is

        Q = (G_perf^dag R^dag) G_perf^dag M_B G (R M_A) G

    and the fidelity is min |<Psi|Q|Psi>|^2, evaluated through the numerical
    range of Q.  The infidelity scales as eps^2 (a + b p + c p^2); there is no
    cancellation at p = +/-1.
    """
    G = DiagonalGate(tuple(_phases_of(gate))).matrix
    Gp = G if gate_perf is None else DiagonalGate(tuple(_phases_of(gate_perf))).matrix
    R = pi_pulse_pair()
    MA = np.kron(overrotation(eps), overrotation(eps))
    MB = np.kron(overrotation(p * eps), overrotation(p * eps))
    Q = (Gp.conj().T @ R.conj().T) @ Gp.conj().T @ MB @ G @ (R @ MA) @ G
    return min_state_overlap(Q) ** 2


# -- imperfect pi pulses: bit-flip relaxation channel -------------------------

def bitflip_kraus(zeta1, zeta2):
    """Kraus operators of the simultaneous-pi-pulse channel with flip failures.

    M1 flips both qubits (success), M2 fails on qubit 2, M3 fails on qubit 1,
    M4 fails on both; zeta_j is the bit-flip failure probability of qubit j.
    Satisfies sum M^dag M = 1 exactly.
    """
    for z in (zeta1, zeta2):
        if not 0.0 <= z <= 1.0:
            raise ValueError("bit-flip probability outside [0, 1]")
    r = pi_pulse()
    one = np.eye(2, dtype=complex)
    return [
        np.sqrt((1.0 - zeta1) * (1.0 - zeta2)) * np.kron(r, r),
        np.sqrt((1.0 - zeta1) * zeta2) * np.kron(r, one),
        np.sqrt(zeta1 * (1.0 - zeta2)) * np.kron(one, r),
        np.sqrt(zeta1 * zeta2) * np.kron(one, one),
    ]


def _interleaved_corrections(mean_phases, vartheta_bar):
    """The two correction pulses S and S~ applied after each gate.

    S  = diag{e^{-i Th_00}, e^{-i Th_01}, e^{-i Th_10}, e^{-i Th_11} e^{i vt}}
    S~ = diag{e^{-i Th_00} e^{i vt}, e^{-i Th_01}, e^{-i Th_10}, e^{-i Th_11}}

    With perfect pulses the net ideal sequence is exactly P(2 vt).
    """
    t = np.asarray(mean_phases, dtype=float)
    s = np.exp(-1j * t)
    S = np.diag(s * np.array([1.0, 1.0, 1.0, np.exp(1j * vartheta_bar)]))
    St = np.diag(s * np.array([np.exp(1j * vartheta_bar), 1.0, 1.0, 1.0]))
    return S, St


def _state_from_params(v):
    c = v[:4] + 1j * v[4:]
    n = np.linalg.norm(c)
    return c / n if n > 0 else np.array([1.0, 0, 0, 0], dtype=complex)


_BITFLIP_SEEDS = [
    np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2),
    np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2),
    np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2),
    np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2),
    np.array([1, 0, 0, 0], dtype=complex),
    np.array([0, 1, 0, 0], dtype=complex),
    np.array([1, 1, 1, 1], dtype=complex) / 2.0,
    np.array([1, 1j, -1, -1j], dtype=complex) / 2.0,
]


def echo_fidelity_bitflip(gate, zeta, zeta2=None, mean_gate=None):
    """Worst-case fidelity of the echo sequence with bit-flip pulse failures.

    Runs the density-matrix sequence G, S, flip channel, G, S~, flip channel
    with the Kraus operators of bitflip_kraus and minimizes
    <Psi_perf| rho |Psi_perf> over all pure initial states (multi-start BFGS
    from Bell, computational and symmetric seeds).  For a perfect gate the
    result is 1 - 4 zeta up to O(zeta^2).
    """
    z1 = float(zeta)
    z2 = z1 if zeta2 is None else float(zeta2)
    if not (0.0 <= z1 <= 1.0 and 0.0 <= z2 <= 1.0):
        raise ValueError("bit-flip probability outside [0, 1]")
    if max(z1, z2) > 0.1:
        warnings.warn("bit-flip probability above 0.1: outside the small-zeta regime")

    phases = _phases_of(gate)
    mean = phases if mean_gate is None else _phases_of(mean_gate)
    vt = mean[0] - mean[1] - mean[2] + mean[3]
    G = np.diag(np.exp(1j * phases))
    S, St = _interleaved_corrections(mean, vt)
    kraus = bitflip_kraus(z1, z2)
    perf = DiagonalGate.controlled_phase(2.0 * vt).matrix

    # branch operators: rho_out = sum_{mu,nu} B_{mu nu} rho B^dag, with
    # B_{mu nu} = M_nu S~ G M_mu S G;  fold in the perfect-state projection.
    A = [perf.conj().T @ (Mn @ St @ G @ Mm @ S @ G)
         for Mm in kraus for Mn in kraus]

    def cost(v):
        c = _state_from_params(v)
        return sum(abs(np.vdot(c, a @ c)) ** 2 for a in A)

    best = 1.0
    for seed in _BITFLIP_SEEDS:
        v0 = np.concatenate([seed.real, seed.imag])
        r = minimize(cost, v0, method="BFGS",
                     options={"gtol": 1e-12, "maxiter": 400})
        if r.fun < best:
            best = r.fun
    return float(np.clip(best, 0.0, 1.0))
