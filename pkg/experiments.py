"""
Experiment layer between the physics package and the CLI.

Each builder runs one group of physics operations and returns plot-ready
pandas tables and/or a JSON-ready report dict. Nothing here touches the
filesystem except ``load_history``.
"""

import json
import logging
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from physics import (
    PhysicalConfig,
    DomainError,
    make_particle,
    energy_partition,
    integrate_energy,
    de_broglie_wavelength,
    sample_intrinsic_fields,
    spin_parameters,
    spin_orientation,
    epr_precision_check,
    verify_field_equations,
    convergence_order,
    energy_balance_audit,
    constant_motion_self_energy,
    MagneticScenario,
    phase_difference,
    phase_sweep,
    build_free_ensemble,
    evaluate_wavefunction,
    apply_potential,
    retarding_field_collapse,
    normalize,
    interaction_free_condition,
    energy_expectation,
    energy_spread,
    absorption_sequence,
    alpha_gamma_table,
    energy_comparison_curves,
    interaction_cutoff,
    weisskopf_self_energy,
    bethe_lamb_shift,
)
from physics.absorption import DEFAULT_N_MAX
from physics.ensemble import QuantumEnsemble
from physics.magnetic import fit_phase_line

logger = logging.getLogger(__name__)

Tables = Dict[str, pd.DataFrame]


# --- Intrinsic wave ---

def intrinsic_fields(kind: str, u: float, config: PhysicalConfig, points: int = 129, t: float = 0.0) -> Tuple[pd.DataFrame, Dict]:
    """
    Fields of one particle over a wavelength, plus its energy bookkeeping.

    Returns:
        (table with columns x, rho, E, B, phi; energy report)
    """
    state = make_particle(kind, u, config)
    x = np.linspace(0.0, state.wavelength, points)
    sample = sample_intrinsic_fields(state, x, t)
    table = pd.DataFrame({"x": sample.x, "rho": sample.rho, "E": sample.E, "B": sample.B, "phi": sample.phi})

    w_kin, w_pot, w_tot = energy_partition(state)
    i_kin, i_pot, i_tot = integrate_energy(state)
    h = state.wavelength / 32
    report = {
        "kind": state.kind,
        "u": state.u,
        "omega": state.omega,
        "wavelength": state.wavelength,
        "de_broglie_wavelength": de_broglie_wavelength(state),
        "W_kin": w_kin,
        "W_pot": w_pot,
        "W_tot": w_tot,
        "integrated": {"W_kin": i_kin, "W_pot": i_pot, "W_tot": i_tot},
        "field_equations": verify_field_equations(state, h),
        "convergence_order": convergence_order(state, h),
    }
    return table, report


def spin_profile(kind: str, u: Optional[float], config: PhysicalConfig, points: int = 129,
                 window: Optional[float] = None) -> Tuple[pd.DataFrame, Dict]:
    """Spin along the propagation direction over one wavelength; (x, spin) table and solved parameters."""
    params = spin_parameters(kind, config, u=u)
    state = make_particle(kind, u if u is not None else config.c / 2, config)
    x = np.linspace(0.0, state.wavelength, points)
    table = pd.DataFrame({"x": x, "spin": spin_orientation(state, x)})

    report = {
        "kind": state.kind,
        "u": state.u,
        "g": params.g,
        "s": params.s,
        "magnetic_moment": params.magnetic_moment,
        "direction": list(params.direction),
        "period": state.wavelength / 2,
    }
    if window is not None:
        report["epr"] = epr_precision_check(state, window)
    return table, report


# --- Electrostatic interaction ---

def load_history(path: str) -> List[Tuple[float, float]]:
    """Read an acceleration history: a JSON list of {"phi_step": ..., "delta_kinetic": ...} objects."""
    with open(path, 'r') as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as e:
            raise DomainError(f"History file {path} is not valid JSON: {e}") from e
    return parse_history(raw)


def parse_history(raw) -> List[Tuple[float, float]]:
    if not isinstance(raw, list):
        raise DomainError("Acceleration history must be a JSON list of steps")
    steps = []
    for index, entry in enumerate(raw):
        try:
            steps.append((float(entry["phi_step"]), float(entry["delta_kinetic"])))
        except (KeyError, TypeError, ValueError) as e:
            raise DomainError(f"Malformed history step {index}: {entry!r}") from e
    return steps


def electrostatic_balance(history: Sequence[Tuple[float, float]], charge: float = 1.0) -> Dict:
    report = energy_balance_audit(history, charge=charge)
    report["self_energy"] = constant_motion_self_energy(history)
    return report


# --- Magnetic interaction ---

def phase_table(config: PhysicalConfig, B_values: Sequence[float], path_length: float = 1.0,
                u: float = 0.5, wavelength: Optional[float] = None) -> Tuple[pd.DataFrame, Dict]:
    """
    Phase difference for one or many field magnitudes.

    The wavelength defaults to that of an electron moving at u.

    Returns:
        (table with columns B, raw, alpha, n; fit report, empty for a single field value)
    """
    state = make_particle("electron", u, config)
    if wavelength is not None:
        state = replace(state, wavelength=wavelength)

    if len(B_values) == 1:
        scenario = MagneticScenario(state=state, B_ext=float(B_values[0]), path_length=path_length)
        result = phase_difference(scenario, config)
        return pd.DataFrame({"B": [scenario.B_ext], "raw": [result.raw], "alpha": [result.alpha], "n": [result.n]}), {}

    table = phase_sweep(path_length, state.wavelength, u, config.rho_bar, B_values)
    return table, fit_phase_line(table)


def field_grid(B_min: float, B_max: float, steps: int) -> np.ndarray:
    if steps < 2:
        raise DomainError(f"A field sweep needs at least 2 steps, got {steps}")
    return np.linspace(B_min, B_max, steps)


# --- Quantum ensemble ---

def _k_table(ensemble: QuantumEnsemble) -> pd.DataFrame:
    k = ensemble.k_grid()
    return pd.DataFrame({"k": k, "psi0_abs2": np.abs(ensemble.amplitude(k)) ** 2})


def _ensemble_summary(ensemble: QuantumEnsemble) -> Dict:
    summary = {
        "k0": ensemble.k0,
        "support": [list(interval) for interval in ensemble.support],
        "potential": ensemble.potential,
        "transmission": ensemble.transmission,
        "norm": ensemble.norm,
    }
    if not ensemble.empty:
        summary["energy_expectation"] = energy_expectation(ensemble)
        summary["energy_spread"] = energy_spread(ensemble)
    return summary


def ensemble_experiment(config: PhysicalConfig, E_T: float, profile: str = "uniform", grid: int = 2049, dim: int = 1,
                        potentials: Sequence[float] = (), V_rfa: Optional[float] = None,
                        domain: Tuple[float, float] = (-20.0, 20.0), r_points: int = 401,
                        excluded: Optional[Tuple[float, float]] = None) -> Tuple[Tables, Dict]:
    """
    Build an ensemble, pass it through potential steps and an analyzer, then normalize it.

    Returns:
        (tables 'kspace_before', 'kspace_after', 'position'; report with the
        ensemble summaries and, when ``excluded`` is given, the conditioning result)
    """
    before = build_free_ensemble(E_T, profile=profile, grid=grid, config=config, dim=dim)
    after = before
    for V in potentials:
        after = apply_potential(after, V)
    if V_rfa is not None:
        after = retarding_field_collapse(after, V_rfa)

    tables = {"kspace_before": _k_table(before), "kspace_after": _k_table(after)}
    report = {"before": _ensemble_summary(before), "after": _ensemble_summary(after), "domain": list(domain)}

    r = np.linspace(domain[0], domain[1], r_points)
    if after.empty:
        psi = evaluate_wavefunction(after, r)
    else:
        after = normalize(after, domain)
        report["after"]["norm"] = after.norm
        psi = evaluate_wavefunction(after, r)
        if excluded is not None:
            _, conditioning = interaction_free_condition(after, excluded, domain)
            report["interaction_free"] = conditioning

    tables["position"] = pd.DataFrame({"r": r, "re_psi": psi.real, "im_psi": psi.imag, "abs2_psi": np.abs(psi) ** 2})
    return tables, report


# --- Relativistic absorption ---

def absorption_trace(config: PhysicalConfig, hw0: float, tol: Optional[float] = None, n_max: int = DEFAULT_N_MAX) -> Tuple[pd.DataFrame, Dict]:
    trace = absorption_sequence(hw0, n_max=n_max, tol=tol, config=config)
    table = trace.to_frame()[["n", "E_n", "u_n", "alpha_n"]]
    report = {
        "hw0": hw0,
        "rows": len(trace),
        "converged": trace.converged,
        "E_limit": trace.E_limit,
        "rest_energy": config.rest_energy,
        "cutoff_K": interaction_cutoff(trace),
    }
    return table, report


def alpha_gamma(config: PhysicalConfig, hw0: float) -> Tables:
    return {
        "alpha_gamma": alpha_gamma_table(hw0, config),
        "energy_curves": energy_comparison_curves(hw0, config),
    }


def self_energy(config: PhysicalConfig, a_min: float, a_max: float, steps: int = 50) -> pd.DataFrame:
    if a_min <= 0 or a_max <= a_min or steps < 2:
        raise DomainError(f"Radius range needs 0 < a_min < a_max and steps >= 2, got ({a_min}, {a_max}, {steps})")
    return weisskopf_self_energy(np.geomspace(a_min, a_max, steps), config).to_frame()


def lamb_shift(config: PhysicalConfig, C: float, dE_avg: float, K: Optional[float] = None) -> Dict:
    value = bethe_lamb_shift(C, dE_avg, K=K, config=config)
    return {
        "C": C,
        "dE_avg": dE_avg,
        "K": config.rest_energy if K is None else K,
        "W_ns": value,
    }
