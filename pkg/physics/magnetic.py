"""
Intrinsic energy of a particle inside an external magnetic field.

The field adds |B_ext|^2 to the intrinsic field energy whatever the angle
between the intrinsic and the external field, so the change cannot be written
as -mu.B_ext for a constant vector mu. The changed wavelength shows up as a
phase difference that is linear in |B_ext|.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from physics.constants import PhysicalConfig
from physics.errors import DomainError
from physics.intrinsic_wave import ParticleState, field_energy

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class MagneticScenario:
    """A particle crossing a region of uniform field magnitude B_ext over length l."""

    state: ParticleState
    B_ext: float
    theta: float = 0.0
    path_length: float = 0.0
    switch_on: float = 0.0  # tau of the interval [0, tau]; does not enter the energy
    phi_em: Optional[float] = None

    def __post_init__(self):
        if self.B_ext < 0:
            raise DomainError(f"External field magnitude must be non-negative, got {self.B_ext}")
        if self.path_length < 0:
            raise DomainError(f"Path length must be non-negative, got {self.path_length}")
        if not (0.0 <= self.theta <= math.pi):
            raise DomainError(f"Angle must lie in [0, pi], got {self.theta}")

    @property
    def intrinsic_energy(self) -> float:
        """phi_em, defaulting to the peak intrinsic field energy of the state."""
        if self.phi_em is not None:
            return self.phi_em
        e0, b0 = self.state.field_amplitudes
        return float(field_energy(e0, b0, self.state.u))


@dataclass(frozen=True)
class PhaseResult:
    alpha: float
    n: int
    raw: float


def field_energy_density(E: float, B: float, u: float) -> float:
    """phi_em = (1/2)(E^2/u^2 + B^2)."""
    if u == 0:
        raise DomainError("Field energy density needs u > 0")
    return float(field_energy(E, B, u))


def apply_external_field(scenario: MagneticScenario) -> float:
    """phi(B_ext) = phi_em + |B_ext|^2. The angle theta never enters."""
    return scenario.intrinsic_energy + scenario.B_ext ** 2


def scalar_product_discrepancy(scenario: MagneticScenario, mu: float, thetas: Optional[Sequence[float]] = None) -> pd.DataFrame:
    """
    Delta(theta) = phi(B_ext) - (-mu*B_ext*cos(theta)) over an angle grid.

    Delta is flat in theta only when mu*B_ext = 0.
    """
    if not math.isfinite(mu):
        raise DomainError(f"Magnetic moment must be finite, got {mu}")
    thetas = np.linspace(0.0, math.pi, 181) if thetas is None else np.asarray(thetas, dtype=float)
    energy = apply_external_field(scenario)
    delta = energy + mu * scenario.B_ext * np.cos(thetas)
    return pd.DataFrame({"theta": thetas, "delta": delta})


def raw_phase(path_length: float, wavelength: float, u: float, rho_bar: float, B_ext):
    """2*pi*(l/lambda)*|B_ext|/sqrt(rho_bar*u^2); vectorizes over B_ext."""
    if wavelength <= 0 or u <= 0 or rho_bar <= 0:
        raise DomainError(
            f"Phase difference needs lambda, u and rho_bar positive, got "
            f"lambda={wavelength}, u={u}, rho_bar={rho_bar}"
        )
    return TWO_PI * (path_length / wavelength) * np.abs(B_ext) / math.sqrt(rho_bar * u ** 2)


def reduce_phase(raw: float) -> Tuple[float, int]:
    """Split a raw phase into alpha in [0, 2*pi) and the winding number n."""
    n = math.floor(raw / TWO_PI)
    alpha = raw - TWO_PI * n
    # rounding can leave alpha a hair outside [0, 2*pi)
    if alpha < 0:
        n -= 1
        alpha += TWO_PI
    elif alpha >= TWO_PI:
        n += 1
        alpha -= TWO_PI
    return alpha, n


def phase_difference(scenario: MagneticScenario, config: PhysicalConfig) -> PhaseResult:
    """Phase lag against a beam that never entered the field."""
    state = scenario.state
    raw = float(raw_phase(scenario.path_length, state.wavelength, state.u, config.rho_bar, scenario.B_ext))
    alpha, n = reduce_phase(raw)
    return PhaseResult(alpha=alpha, n=n, raw=raw)


def phase_sweep(path_length: float, wavelength: float, u: float, rho_bar: float, B_values: Sequence[float]) -> pd.DataFrame:
    """
    Tabulate the phase over a set of field magnitudes.

    Returns:
        DataFrame with columns B, raw, alpha, n in the order of B_values
    """
    B_values = np.asarray(B_values, dtype=float)
    if np.unique(B_values).size < 2:
        raise DomainError("A phase sweep needs at least two distinct field values")

    raws = raw_phase(path_length, wavelength, u, rho_bar, B_values)
    reduced = [reduce_phase(float(raw)) for raw in raws]
    return pd.DataFrame({
        "B": B_values,
        "raw": raws,
        "alpha": [alpha for alpha, _ in reduced],
        "n": [n for _, n in reduced],
    })


def phase_slope(path_length: float, wavelength: float, u: float, rho_bar: float) -> float:
    return TWO_PI * path_length / (wavelength * math.sqrt(rho_bar * u ** 2))


def fit_phase_line(table: pd.DataFrame) -> Dict[str, float]:
    """Least-squares line through (B, raw); the residual measures departure from linearity."""
    slope, intercept = np.polyfit(table["B"].to_numpy(), table["raw"].to_numpy(), 1)
    fitted = slope * table["B"].to_numpy() + intercept
    residual = float(np.max(np.abs(fitted - table["raw"].to_numpy())))
    return {"slope": float(slope), "intercept": float(intercept), "max_residual": residual}
