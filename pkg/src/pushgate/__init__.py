"""Fidelity budget of the pushed-ion controlled phase gate.

Two ions in adjacent harmonic wells acquire a conditional phase when an
off-resonant laser pushes them; an echo sequence (push, flip both qubits,
push again) cancels every single-qubit phase and doubles the two-qubit one.
This package assembles the error budget of that gate: dynamical phase
tracking over thermal states, the residual after the echo, photon
scattering from the push beam, the intensity-noise sweet spot of the beam
offset and the effect of a spatially non-uniform push on a thermally
spread ion, each closed form backed by an independent brute-force oracle.
"""

from .constants import CA40, IonSpecies, coulomb_ell, mean_phonon_number
from .gate_algebra import (DiagonalGate, PiPulseErrorModel, echo_correction,
                           echo_fidelity, echo_fidelity_bitflip,
                           echo_fidelity_overrotation,
                           echo_fidelity_phase_errors, echo_sequence_matrix,
                           echo_sequence_residual, fidelity_min_diag,
                           fidelity_min_diag_grid, fidelity_no_echo,
                           local_correction, min_state_fidelity, pi_pulse,
                           z_rotation)
from .trap_dynamics import (ForcePulse, MotionState, ThermalEnsemble,
                            TrapConfig, adiabaticity_metric,
                            analytic_trajectory, coulomb_parameter,
                            equilibrium_stretch, frequency_correction,
                            ode_trajectory)
from .phase_engine import (GateGeometry, PhaseSet, coulomb_phase_quadrature,
                           coulomb_phases, fidelity_echo_closed,
                           fidelity_no_echo_closed, gate_angle,
                           gate_time_for_angle, kinetic_phases,
                           mc_echo_infidelity, mc_gate_angle,
                           mc_no_echo_infidelity, motional_lambda, phase_set,
                           potential_phase, theta_lead, thermal_mean_phases,
                           vartheta_bar_closed, vartheta_closed)
from .dipole_force import (LaserConfig, ScatteringReport, photons_scattered,
                           photons_scattered_power_form, pulse_for_gate,
                           rabi_sq, scattering_fidelity, xi_amplitude)
from .stability import (dphi_dxi, geometry_to_s, intensity_noise_infidelity,
                        omega_sweet, single_qubit_phase, speed_constraints,
                        sweet_spot)
from .thermal_nonuniform import (XiMoments, fidelity_nonuniform_full,
                                 fidelity_sw_closed, fidelity_sw_floor,
                                 fidelity_tw_series, lamb_dicke,
                                 mc_nonuniform_echo, position_sigma,
                                 xi_moments_quadrature, xi_moments_sw,
                                 xi_moments_tw, xi_profile)
from .scenario import (Budget, Scenario, derive, figure_run, figure_scenarios,
                       oracle_run, resolve_detuning, sweep, sweetspot_report,
                       thermal_preset, total_infidelity)
from .config import ConfigError, build_scenario, load

__all__ = [
    "CA40", "IonSpecies", "coulomb_ell", "mean_phonon_number",
    "DiagonalGate", "PiPulseErrorModel", "echo_correction", "echo_fidelity",
    "echo_fidelity_bitflip", "echo_fidelity_overrotation",
    "echo_fidelity_phase_errors", "echo_sequence_matrix",
    "echo_sequence_residual", "fidelity_min_diag", "fidelity_min_diag_grid",
    "fidelity_no_echo", "local_correction", "min_state_fidelity", "pi_pulse",
    "z_rotation",
    "ForcePulse", "MotionState", "ThermalEnsemble", "TrapConfig",
    "adiabaticity_metric", "analytic_trajectory", "coulomb_parameter",
    "equilibrium_stretch", "frequency_correction", "ode_trajectory",
    "GateGeometry", "PhaseSet", "coulomb_phase_quadrature", "coulomb_phases",
    "fidelity_echo_closed", "fidelity_no_echo_closed", "gate_angle",
    "gate_time_for_angle", "kinetic_phases", "mc_echo_infidelity",
    "mc_gate_angle", "mc_no_echo_infidelity", "motional_lambda", "phase_set",
    "potential_phase", "theta_lead", "thermal_mean_phases",
    "vartheta_bar_closed", "vartheta_closed",
    "LaserConfig", "ScatteringReport", "photons_scattered",
    "photons_scattered_power_form", "pulse_for_gate", "rabi_sq",
    "scattering_fidelity", "xi_amplitude",
    "dphi_dxi", "geometry_to_s", "intensity_noise_infidelity", "omega_sweet",
    "single_qubit_phase", "speed_constraints", "sweet_spot",
    "XiMoments", "fidelity_nonuniform_full", "fidelity_sw_closed",
    "fidelity_sw_floor", "fidelity_tw_series", "lamb_dicke",
    "mc_nonuniform_echo", "position_sigma", "xi_moments_quadrature",
    "xi_moments_sw", "xi_moments_tw", "xi_profile",
    "Budget", "Scenario", "derive", "figure_run", "figure_scenarios",
    "oracle_run", "resolve_detuning", "sweep", "sweetspot_report",
    "thermal_preset", "total_infidelity",
    "ConfigError", "build_scenario", "load",
]
