"""
Physics package for the extended-electron laboratory.

This package contains one module per part of the model:
- constants: unit system and physical constants
- intrinsic_wave: intrinsic fields, energy partition and spin of a single particle
- electrostatic: Lagrangian/Hamiltonian bookkeeping and the radiation energy audit
- magnetic: energy shift and interferometric phase in an external field
- ensemble: the quantum ensemble in k-space, potentials and collapse
- absorption: photon-absorption recursion, virtual mass and self-energy cutoffs
"""

from .constants import PhysicalConfig, natural_units, si_units, preset, load as load_config

from .errors import DomainError, GridTooCoarseError, TotalReflectionError, ConfigError

from .intrinsic_wave import (
    ParticleState,
    make_particle,
    energy_partition,
    integrate_energy,
    de_broglie_wavelength,
    sample_intrinsic_fields,
    spin_parameters,
    spin_interaction_energy,
    spin_orientation,
    epr_precision_check,
    verify_field_equations,
    convergence_order,
)

from .electrostatic import (
    InteractionSystem,
    lagrange_density,
    hamiltonian_first_order,
    interaction_hamiltonian,
    energy_balance_audit,
    constant_motion_self_energy,
)

from .magnetic import (
    MagneticScenario,
    field_energy_density,
    apply_external_field,
    scalar_product_discrepancy,
    phase_difference,
    phase_sweep,
)

from .ensemble import (
    QuantumEnsemble,
    PotentialProfile,
    build_free_ensemble,
    evaluate_wavefunction,
    apply_potential,
    local_ensemble,
    retarding_field_collapse,
    normalize,
    interaction_free_condition,
    energy_expectation,
    energy_spread,
    transmission,
    quadrature_error_estimate,
)

from .absorption import (
    AbsorptionTrace,
    SelfEnergyCurve,
    absorption_sequence,
    gamma,
    alpha_factor,
    alpha_gamma_table,
    energy_comparison_curves,
    velocity_gain_ratio,
    interaction_cutoff,
    weisskopf_self_energy,
    bethe_lamb_shift,
)

__all__ = [
    'PhysicalConfig', 'natural_units', 'si_units', 'preset', 'load_config',
    'DomainError', 'GridTooCoarseError', 'TotalReflectionError', 'ConfigError',
    'ParticleState', 'make_particle', 'energy_partition', 'integrate_energy', 'de_broglie_wavelength',
    'sample_intrinsic_fields', 'spin_parameters', 'spin_interaction_energy', 'spin_orientation', 'epr_precision_check',
    'verify_field_equations', 'convergence_order',
    'InteractionSystem', 'lagrange_density', 'hamiltonian_first_order', 'interaction_hamiltonian',
    'energy_balance_audit', 'constant_motion_self_energy',
    'MagneticScenario', 'field_energy_density', 'apply_external_field', 'scalar_product_discrepancy',
    'phase_difference', 'phase_sweep',
    'QuantumEnsemble', 'PotentialProfile', 'build_free_ensemble', 'evaluate_wavefunction', 'apply_potential',
    'local_ensemble', 'retarding_field_collapse', 'normalize', 'interaction_free_condition',
    'energy_expectation', 'energy_spread', 'transmission', 'quadrature_error_estimate',
    'AbsorptionTrace', 'SelfEnergyCurve', 'absorption_sequence', 'gamma', 'alpha_factor', 'alpha_gamma_table',
    'energy_comparison_curves', 'velocity_gain_ratio', 'interaction_cutoff', 'weisskopf_self_energy',
    'bethe_lamb_shift',
]
