"""
Electrostatic acceleration as a chain of photon absorptions.

Each absorbed quantum hbar*w0 is time dilated by the current velocity, so the
energy grows as E_{n+1} = E_n + hbar*w0*sqrt(1 - u_n^2/c^2) with E = m*u^2. The
sequence is bounded by m*c^2. Comparing the velocities reached against the
classical ones gives a virtual mass factor alpha that tracks the Lorentz gamma.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

import numpy as np
import pandas as pd

from physics.constants import PhysicalConfig, natural_units
from physics.errors import DomainError

logger = logging.getLogger(__name__)

# Default stopping increment, relative to m*c^2
DEFAULT_TOL = 1e-12
DEFAULT_N_MAX = 10_000_000
# Velocity grid of the alpha/gamma comparison, in units of c
VELOCITY_GRID = tuple(round(0.05 * i, 2) for i in range(1, 20)) + (0.99,)
# Coarsest quantum that still resolves the first grid point
MAX_TABLE_QUANTUM = 0.0025
DEVIATION_THRESHOLD = 0.10


@dataclass(frozen=True, eq=False)
class AbsorptionTrace:
    """Energies E_0..E_N after 1..N+1 absorbed quanta."""

    hw0: float
    E: np.ndarray
    converged: bool
    config: PhysicalConfig = field(default_factory=natural_units)

    @property
    def E_limit(self) -> float:
        return float(self.E[-1])

    @property
    def n(self) -> np.ndarray:
        return np.arange(self.E.size)

    @property
    def u(self) -> np.ndarray:
        return np.sqrt(self.E / self.config.m)

    @property
    def u_classical(self) -> np.ndarray:
        """Velocity without time dilation; row n holds n + 1 quanta."""
        return np.sqrt((self.n + 1) * self.hw0 / self.config.m)

    def __len__(self):
        return self.E.size

    def to_frame(self) -> pd.DataFrame:
        alpha = alpha_factor(self, self.config) if len(self) >= 2 else np.full(len(self), np.nan)
        return pd.DataFrame({
            "n": self.n,
            "E_n": self.E,
            "u_n": self.u,
            "u_classical_n": self.u_classical,
            "alpha_n": alpha,
        })


@dataclass(frozen=True, eq=False)
class SelfEnergyCurve:
    a: np.ndarray
    W_st: np.ndarray
    W_fluct: np.ndarray

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"a": self.a, "W_st": self.W_st, "W_fluct": self.W_fluct})

    def loglog_slopes(self) -> Dict[str, float]:
        """Power-law exponents fitted in log-log space."""
        log_a = np.log(self.a)
        return {
            "W_st": float(np.polyfit(log_a, np.log(self.W_st), 1)[0]),
            "W_fluct": float(np.polyfit(log_a, np.log(self.W_fluct), 1)[0]),
        }


def absorption_sequence(hw0: float, n_max: int = DEFAULT_N_MAX, tol: Optional[float] = None,
                        config: PhysicalConfig = None) -> AbsorptionTrace:
    """
    Iterate the absorption recursion from E_0 = hbar*w0.

    The square-root argument is clamped at zero and E is capped at m*c^2, so
    rounding near the fixed point cannot push the energy past it.

    Args:
        hw0: photon quantum hbar*w0, 0 < hw0 < m*c^2
        n_max: maximum number of absorption steps
        tol: the iteration stops once an increment falls below tol;
            DEFAULT_TOL*m*c^2 when omitted

    Returns:
        AbsorptionTrace; ``converged`` is False when n_max ran out first
    """
    config = config or natural_units()
    mc2 = config.rest_energy
    if tol is None:
        tol = DEFAULT_TOL * mc2
    if not 0 < hw0 < mc2:
        raise DomainError(f"Photon quantum must satisfy 0 < hw0 < m*c^2 = {mc2}, got hw0={hw0}")
    if n_max < 1:
        raise DomainError(f"n_max must be at least 1, got {n_max}")
    if tol <= 0:
        raise DomainError(f"Tolerance must be positive, got {tol}")

    energies = [hw0]
    energy = hw0
    converged = False
    for _ in range(n_max):
        increment = hw0 * math.sqrt(max(0.0, 1.0 - energy / mc2))
        if increment < tol:
            converged = True
            break
        updated = min(mc2, energy + increment)
        if updated <= energy:
            converged = True
            break
        energies.append(updated)
        energy = updated

    if not converged:
        logger.warning(f"Absorption sequence stopped at n_max={n_max} with E={energy} < m*c^2={mc2}")
    logger.debug(f"Absorption trace for hw0={hw0}: {len(energies)} rows, E_limit={energy}")
    return AbsorptionTrace(hw0=hw0, E=np.array(energies), converged=converged, config=config)


def gamma(u, config: PhysicalConfig = None):
    """Lorentz factor 1/sqrt(1 - u^2/c^2) for 0 <= u < c."""
    config = config or natural_units()
    values = np.asarray(u, dtype=float)
    if np.any(values < 0) or np.any(values >= config.c):
        raise DomainError(f"Velocity must satisfy 0 <= u < c = {config.c}, got {u}")
    beta = values / config.c
    result = 1 / np.sqrt(1 - beta * beta)
    return float(result) if result.ndim == 0 else result


def alpha_factor(trace: AbsorptionTrace, config: PhysicalConfig = None) -> np.ndarray:
    """
    Virtual mass factor per trace row.

    alpha_n = sqrt(hw0/m) * (sqrt(n+1) - sqrt(n)) / (u_n - u_{n-1}) * u_n^c / u_n,
    the classical velocity gain over the time-dilated one, rescaled by the
    ratio of both velocities. Row 0, rows that reached c and rows whose
    velocity did not change are NaN.
    """
    config = config or trace.config
    if len(trace) < 2:
        raise DomainError("Virtual mass factor needs a trace with at least two rows")

    u = np.sqrt(trace.E / config.m)
    quanta = trace.n + 1.0
    classical_gain = math.sqrt(trace.hw0 / config.m) * (np.sqrt(quanta[1:]) - np.sqrt(quanta[:-1]))
    gain = np.diff(u)
    u_classical = np.sqrt(quanta * trace.hw0 / config.m)

    alpha = np.full(u.shape, np.nan)
    valid = (gain > 0) & (u[1:] < config.c)
    repeated = np.flatnonzero(gain <= 0) + 1
    if repeated.size:
        logger.warning(f"Skipped {repeated.size} steps with repeated velocity, first at n={repeated[0]}")
    rows = np.flatnonzero(valid) + 1
    alpha[rows] = classical_gain[valid] / gain[valid] * u_classical[rows] / u[rows]
    return alpha


def _resolving_trace(hw0: float, config: PhysicalConfig) -> AbsorptionTrace:
    mc2 = config.rest_energy
    if hw0 > MAX_TABLE_QUANTUM * mc2:
        raise DomainError(
            f"hw0={hw0} is too coarse to resolve u/c = {VELOCITY_GRID[0]}: need hw0 <= {MAX_TABLE_QUANTUM}*m*c^2 = {MAX_TABLE_QUANTUM * mc2}"
        )
    return absorption_sequence(hw0, config=config)


def alpha_gamma_table(hw0: float, config: PhysicalConfig = None, threshold: float = DEVIATION_THRESHOLD) -> pd.DataFrame:
    """
    alpha against gamma on the u/c grid 0.05, 0.10, ..., 0.95, 0.99.

    alpha is interpolated linearly between the adjacent trace rows. The
    ``insignificant`` column marks rows whose relative deviation stays below
    ``threshold``.
    """
    config = config or natural_units()
    trace = _resolving_trace(hw0, config)
    alpha = alpha_factor(trace, config)
    beta = trace.u / config.c
    usable = np.isfinite(alpha)

    grid = np.array(VELOCITY_GRID)
    alpha_grid = np.interp(grid, beta[usable], alpha[usable])
    gamma_grid = gamma(grid * config.c, config)
    deviation = np.abs(alpha_grid / gamma_grid - 1)
    return pd.DataFrame({
        "u_over_c": grid,
        "alpha": alpha_grid,
        "gamma": gamma_grid,
        "deviation": deviation,
        "insignificant": deviation < threshold,
    })


def energy_comparison_curves(hw0: float, config: PhysicalConfig = None) -> pd.DataFrame:
    """
    Bounded interaction energy against the divergent special-relativistic one.

    E_interaction is read off the trace (E = m*u^2, never above m*c^2).
    E_interaction_rest reports the kinetic part plus the rest energy so that
    both curves start at m*c^2. E_SR = gamma*m*c^2.
    """
    config = config or natural_units()
    trace = _resolving_trace(hw0, config)
    mc2 = config.rest_energy
    grid = np.array(VELOCITY_GRID)
    u = grid * config.c
    e_interaction = np.interp(grid, trace.u / config.c, trace.E)
    return pd.DataFrame({
        "u_over_c": grid,
        "E_interaction": e_interaction,
        "E_interaction_rest": 0.5 * e_interaction + mc2,
        "E_SR": gamma(u, config) * mc2,
    })


def velocity_gain_ratio(trace: AbsorptionTrace) -> pd.DataFrame:
    """Velocity gained per absorption over the classical gain; it drops as u approaches c."""
    u = trace.u
    ratio = np.diff(u) / np.diff(trace.u_classical)
    return pd.DataFrame({"n": trace.n[1:], "u_over_c": u[1:] / trace.config.c, "ratio": ratio})


def interaction_cutoff(trace: AbsorptionTrace) -> float:
    """Limiting energy E_limit of the trace, used as the field-energy cutoff K (m*c^2 once converged)."""
    if not trace.converged:
        logger.warning("Cutoff taken from an unconverged absorption trace")
    return trace.E_limit


def weisskopf_self_energy(a: Sequence[float], config: PhysicalConfig = None) -> SelfEnergyCurve:
    """W_st = e^2/a and W_fluct = e^2*h/(pi*m*c*a^2), both divergent as a -> 0."""
    config = config or natural_units()
    radii = np.asarray(a, dtype=float)
    if radii.size == 0 or np.any(radii <= 0):
        raise DomainError("Self-energy radii must all be positive")
    e2 = config.e ** 2
    return SelfEnergyCurve(
        a=radii,
        W_st=e2 / radii,
        W_fluct=e2 * config.h / (math.pi * config.m * config.c * radii ** 2),
    )


def bethe_lamb_shift(C: float, dE_avg: float, K: Optional[float] = None, config: PhysicalConfig = None) -> float:
    """W'_ns = C*ln(K/dE_avg); the cutoff K defaults to m*c^2."""
    if K is None:
        K = (config or natural_units()).rest_energy
    if K <= 0 or dE_avg <= 0:
        raise DomainError(f"Logarithm argument K/dE_avg must be positive, got K={K}, dE_avg={dE_avg}")
    return C * math.log(K / dE_avg)
