"""
Electron, photon and external-field bookkeeping of electrostatic interaction.

The Lagrange density couples the electron (density rho0, velocity x_dot), a
photon field (rho_ph) and an external potential (charge density sigma0 in
phi_ext). At first order the kinetic and photon terms cancel in the
Hamiltonian, which leaves H = sigma0*phi_ext: kinetic energy gained under
acceleration leaves as radiation.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from physics.constants import PhysicalConfig, natural_units
from physics.errors import DomainError

logger = logging.getLogger(__name__)

# Relative tolerance of the per-step energy balance
BALANCE_RTOL = 1e-12


@dataclass(frozen=True)
class InteractionSystem:
    rho0: float
    sigma0: float
    x_dot: Tuple[float, ...]
    rho_ph: float = 0.0
    phi_ext: float = 0.0
    config: PhysicalConfig = field(default_factory=natural_units)

    def __post_init__(self):
        if self.rho0 < 0 or self.rho_ph < 0:
            raise DomainError(f"Densities must be non-negative, got rho0={self.rho0}, rho_ph={self.rho_ph}")

    @property
    def speed_squared(self) -> float:
        return float(np.sum(np.square(self.x_dot)))


@dataclass(frozen=True)
class HamiltonianResult:
    """H with the certificate that the first-order cancellation took place."""

    H: float
    kinetic_term: float
    photon_term: float
    cancellation_residual: float
    photon_density_consistent: bool
    first_order: bool = True
    note: str = "valid only in the first order expansion"


def lagrange_density(system: InteractionSystem) -> float:
    """L = rho0*x_dot^2 + rho_ph*c^2 - sigma0*phi_ext."""
    c = system.config.c
    return system.rho0 * system.speed_squared + system.rho_ph * c ** 2 - system.sigma0 * system.phi_ext


def hamiltonian_first_order(system: InteractionSystem) -> HamiltonianResult:
    """
    First-order Hamiltonian H = sigma0*phi_ext.

    The kinetic term rho0*x_dot^2 cancels against the system's own photon term
    rho_ph*c^2; the residual of that cancellation is reported, not enforced.
    """
    kinetic = system.rho0 * system.speed_squared
    _, rho_ph_required = interaction_hamiltonian(system.rho0, system.x_dot, system.config)
    photon = system.rho_ph * system.config.c ** 2
    consistent = math.isclose(system.rho_ph, rho_ph_required, rel_tol=BALANCE_RTOL)
    return HamiltonianResult(
        H=system.sigma0 * system.phi_ext,
        kinetic_term=kinetic,
        photon_term=photon,
        cancellation_residual=kinetic - photon,
        photon_density_consistent=consistent,
    )


def interaction_hamiltonian(rho0: float, x_dot: Sequence[float], config: PhysicalConfig) -> Tuple[float, float]:
    """
    H_w = H - H0 = -rho0*x_dot^2 and the photon density that balances it.

    Returns:
        (H_w, rho_ph_required) with rho_ph_required = rho0*x_dot^2/c^2
    """
    if rho0 < 0:
        raise DomainError(f"Electron density must be non-negative, got {rho0}")
    speed_squared = float(np.sum(np.square(np.atleast_1d(x_dot))))
    gained = rho0 * speed_squared
    return -gained, gained / config.c ** 2


def _filter_steps(history: Iterable[Tuple[float, float]]) -> List[Tuple[float, float]]:
    # Steps where neither the potential nor the kinetic energy moved carry no information
    return [(float(dphi), float(dkin)) for dphi, dkin in history if dphi != 0 or dkin != 0]


def energy_balance_audit(history: Sequence[Tuple[float, float]], charge: float = 1.0) -> Dict:
    """
    Check that kinetic energy gained under acceleration is radiated away.

    Each step is (phi_ext step, kinetic energy change). The work done by the
    field is -charge*dphi; the emitted photon energy equals the kinetic gain.

    Args:
        history: non-empty sequence of (dphi, dkinetic) steps
        charge: charge density amplitude sigma0 coupling to the potential

    Returns:
        Dict with 'balanced', per-step records, totals and violating step indices
    """
    if len(history) == 0:
        raise DomainError("Acceleration history must contain at least one step")

    steps = _filter_steps(history)
    records = []
    violations = []
    for index, (dphi, dkin) in enumerate(steps):
        work = -charge * dphi
        emitted = dkin
        scale = max(abs(work), abs(emitted))
        ok = abs(emitted - work) <= BALANCE_RTOL * scale
        if not ok:
            violations.append(index)
        records.append({"step": index, "phi_step": dphi, "delta_kinetic": dkin, "work": work, "emitted": emitted, "balanced": ok})

    total_kinetic = math.fsum(dkin for _, dkin in steps)
    total_emitted = math.fsum(r["emitted"] for r in records)
    total_work = math.fsum(r["work"] for r in records)
    totals_ok = abs(total_emitted - total_work) <= BALANCE_RTOL * max(abs(total_work), abs(total_emitted))

    if violations:
        logger.warning(f"Energy balance violated at steps {violations}")
    return {
        "balanced": not violations and totals_ok,
        "steps": records,
        "total_kinetic": total_kinetic,
        "total_emitted": total_emitted,
        "total_work": total_work,
        "violations": violations,
        "tolerance": BALANCE_RTOL,
    }


def constant_motion_self_energy(history: Sequence[Tuple[float, float]]) -> float:
    """Electrostatic self-energy from emission; nothing is radiated without a change in kinetic energy."""
    return math.fsum(dkin for _, dkin in _filter_steps(history))
