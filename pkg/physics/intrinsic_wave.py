"""
Intrinsic wave model of a single extended particle.

An electron (or photon) is a monochromatic plane wave travelling along x. Its
mass density rho = rho0*cos^2(theta) and its intrinsic potential
phi = (rho0*u^2/2)*sin^2(theta), theta = k*x - omega*t, trade energy back and
forth with period lambda/2 while their sum stays constant. The transversal
fields E (along y) and B (along z) carry the intrinsic potential.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Tuple, Union

import numpy as np
from scipy.integrate import trapezoid

from physics.constants import PhysicalConfig
from physics.errors import DomainError, GridTooCoarseError

logger = logging.getLogger(__name__)

ELECTRON = "electron"
PHOTON = "photon"
KINDS = (ELECTRON, PHOTON)

# Momentum density along x, E along y, B along z
PROPAGATION_AXIS = (1.0, 0.0, 0.0)
E_AXIS = (0.0, 1.0, 0.0)
B_AXIS = (0.0, 0.0, 1.0)

# Finest spacing allowed relative to the wavelength for residual checks
MIN_POINTS_PER_WAVELENGTH = 16

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class ParticleState:
    """One ensemble member: a plane wave with intrinsic mass density."""

    kind: str
    u: float
    omega: float
    wavelength: float
    k: float
    rho0: float
    volume: float
    config: PhysicalConfig

    @property
    def mass(self) -> float:
        return self.config.m

    def phase(self, x: ArrayLike, t: float = 0.0) -> ArrayLike:
        return self.k * np.asarray(x, dtype=float) - self.omega * t

    @property
    def charge(self) -> float:
        """Intrinsic charge sigma_bar*V carried by the wave."""
        return self.config.sigma_bar * self.volume

    @property
    def field_amplitudes(self) -> Tuple[float, float]:
        """(E0, B0) so that phi = (1/2)(E^2/u^2 + B^2) peaks at rho0*u^2/2."""
        b0 = self.u * math.sqrt(self.rho0 / 2.0)
        return self.u * b0, b0


@dataclass(frozen=True)
class FieldSample:
    """Intrinsic quantities of a state sampled at positions x and time t."""

    x: np.ndarray
    t: float
    rho: np.ndarray
    p: np.ndarray
    E: np.ndarray
    B: np.ndarray
    phi: np.ndarray
    moment_field: np.ndarray
    u: float

    @property
    def total_energy_density(self) -> np.ndarray:
        return 0.5 * self.rho * self.u ** 2 + self.phi

    def vectors(self) -> Dict[str, np.ndarray]:
        """Field components as 3-vectors, shape (len(x), 3)."""
        return {
            "p": np.outer(self.p, PROPAGATION_AXIS),
            "E": np.outer(self.E, E_AXIS),
            "B": np.outer(self.B, B_AXIS),
        }


@dataclass(frozen=True)
class SpinParameters:
    """Solved spin; field_amplitude is the peak of B_s as seen by a moment of charge e."""

    g: float
    s: float
    direction: Tuple[float, float, float]
    magnetic_moment: float
    field_amplitude: float


def make_particle(kind: str, u: float, config: PhysicalConfig, volume: float = 1.0) -> ParticleState:
    """
    Build a plane-wave particle obeying hbar*omega = m*u^2.

    Args:
        kind: 'electron' or 'photon'; photons always travel at c
        u: propagation speed, 0 < u <= c
        config: unit system
        volume: normalized particle volume V

    Returns:
        ParticleState with omega = k*u and lambda = 2*pi/k
    """
    if kind not in KINDS:
        raise DomainError(f"Unknown particle kind '{kind}', expected one of {KINDS}")
    if not (0 < u <= config.c):
        raise DomainError(f"Speed must satisfy 0 < u <= c, got u={u} with c={config.c}")
    if volume <= 0:
        raise DomainError(f"Volume must be positive, got {volume}")
    if kind == PHOTON and u != config.c:
        logger.debug(f"Photon speed pinned to c (requested u={u})")
        u = config.c

    k = config.m * u / config.hbar
    return ParticleState(
        kind=kind,
        u=u,
        omega=k * u,
        wavelength=2 * math.pi / k,
        k=k,
        rho0=2.0 * config.m / volume,
        volume=volume,
        config=config,
    )


def energy_partition(state: ParticleState) -> Tuple[float, float, float]:
    """(W_kin, W_pot, W_tot) with W_kin = W_pot = m*u^2/2 and W_tot = hbar*omega."""
    w_kin = 0.5 * state.mass * state.u ** 2
    w_pot = 0.5 * state.mass * state.u ** 2
    return w_kin, w_pot, w_kin + w_pot


def de_broglie_wavelength(state: ParticleState) -> float:
    return state.config.h / (state.mass * state.u)


def moment_field(state: ParticleState, x: ArrayLike, t: float = 0.0) -> ArrayLike:
    """B_s = -(1/(2*sigma_bar)) d/dx (rho*u), the field the magnetic moment couples to."""
    theta = state.phase(x, t)
    return state.rho0 * state.k * state.u / (2.0 * state.config.sigma_bar) * np.sin(2.0 * theta)


def sample_intrinsic_fields(state: ParticleState, x: ArrayLike, t: float = 0.0) -> FieldSample:
    """Sample rho, p = rho*u, E, B and phi at positions x."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    theta = state.phase(x, t)
    e0, b0 = state.field_amplitudes
    rho = state.rho0 * np.cos(theta) ** 2
    e_field = e0 * np.sin(theta)
    b_field = b0 * np.sin(theta)
    return FieldSample(
        x=x,
        t=t,
        rho=rho,
        p=rho * state.u,
        E=e_field,
        B=b_field,
        phi=field_energy(e_field, b_field, state.u),
        moment_field=moment_field(state, x, t),
        u=state.u,
    )


def field_energy(E: ArrayLike, B: ArrayLike, u: float) -> ArrayLike:
    return 0.5 * (np.square(E) / u ** 2 + np.square(B))


def integrate_energy(state: ParticleState, volume: float = None, points: int = 1025) -> Tuple[float, float, float]:
    """
    Integrate the kinetic density rho*u^2/2 and phi over one wavelength.

    The amplitudes are rebuilt for ``volume`` (rho0 = 2m/V), so the result does
    not depend on the volume chosen.
    """
    volume = state.volume if volume is None else volume
    if volume <= 0:
        raise DomainError(f"Volume must be positive, got {volume}")
    scaled = make_particle(state.kind, state.u, state.config, volume=volume)
    x = np.linspace(0.0, scaled.wavelength, points)
    fields = sample_intrinsic_fields(scaled, x)

    w_kin = volume * trapezoid(0.5 * fields.rho * scaled.u ** 2, x) / scaled.wavelength
    w_pot = volume * trapezoid(fields.phi, x) / scaled.wavelength
    return w_kin, w_pot, w_kin + w_pot


def _moment_peak(state: ParticleState) -> float:
    # sin(2*theta) = 1 a quarter phase in
    return abs(float(moment_field(state, math.pi / (4.0 * state.k))))


def _circulating_energy(state: ParticleState) -> float:
    # Electrons: only the intrinsic potential circulates. Photons: all of it.
    w_kin, w_pot, w_tot = energy_partition(state)
    return w_pot if state.kind == ELECTRON else w_tot


def spin_parameters(kind: str, config: PhysicalConfig, u: float = None) -> SpinParameters:
    """
    Solve W = -mu.B = hbar*omega/2 with mu = g*(e/2m)*s on the plane-wave state.

    The spin is the circulating intrinsic energy per angular frequency; the
    magnetic moment follows from the peak of the moment field B_s, and g from
    the definition of mu. Nothing here is tabulated per particle kind, and
    neither sigma_bar nor e changes g.
    """
    if u is None:
        u = config.c if kind == PHOTON else 0.5 * config.c
    state = make_particle(kind, u, config)

    # B_s is sourced by the wave's charge sigma_bar*V; mu is written for e
    b_peak = _moment_peak(state) * state.charge / config.e
    interaction_energy = 0.5 * config.hbar * state.omega
    mu = interaction_energy / b_peak
    s = _circulating_energy(state) / state.omega
    g = 2.0 * config.m * mu / (config.e * s)
    return SpinParameters(g=g, s=s, direction=B_AXIS, magnetic_moment=mu, field_amplitude=b_peak)


def spin_interaction_energy(params: SpinParameters, config: PhysicalConfig) -> float:
    """g*(e/2m)*s*|B_s|, which the solve sets equal to hbar*omega/2."""
    return params.g * config.e / (2.0 * config.m) * params.s * params.field_amplitude


def spin_orientation(state: ParticleState, x: ArrayLike, t: float = 0.0) -> ArrayLike:
    """Signed spin along B_AXIS: follows B_s, so it swings from +s to -s every lambda/2."""
    params = spin_parameters(state.kind, state.config, u=state.u)
    return params.s * moment_field(state, x, t) / _moment_peak(state)


def epr_precision_check(state: ParticleState, window: float, positions: int = 257, subsamples: int = 257) -> Dict:
    """
    Boxcar-average the spin over a measurement window of length ``window``.

    Window centres sweep one spin period. A window shorter than lambda/2 can
    still resolve the sign of the spin; at lambda/2 every average vanishes.

    Returns:
        Dict with 'resolvable', 'windowed_spin_range' (min, max), 'window',
        'threshold' and 'spin_magnitude'
    """
    if window <= 0:
        raise DomainError(f"Measurement window must be positive, got {window}")

    period = state.wavelength / 2.0
    centres = np.linspace(0.0, period, positions)
    offsets = np.linspace(-window / 2.0, window / 2.0, subsamples)
    grid = centres[:, None] + offsets[None, :]
    averages = trapezoid(spin_orientation(state, grid), offsets, axis=1) / window

    s = spin_parameters(state.kind, state.config, u=state.u).s
    return {
        "resolvable": bool(window < period),
        "windowed_spin_range": (float(averages.min()), float(averages.max())),
        "window": window,
        "threshold": period,
        "spin_magnitude": s,
    }


def verify_field_equations(state: ParticleState, h: float, method: str = "central", points: int = 64) -> Dict:
    """
    Residuals of the intrinsic field equations on the sampled plane wave.

    Ampere-type: (1/u^2) dE/dt + dB/dx; Faraday-type: dB/dt + dE/dx (the 1+1
    dimensional curls). Central differences use dt = h/(2u) and converge as h^2.

    Args:
        state: particle whose fields are checked
        h: spatial step; must resolve the wavelength (h <= lambda/16)
        method: 'central' or 'analytic'
        points: sample positions over one wavelength, starting at x = 0

    Returns:
        Dict with max-norm residuals 'ampere' and 'faraday', plus 'h' and 'dt'
    """
    if h <= 0:
        raise DomainError(f"Grid spacing must be positive, got {h}")
    limit = state.wavelength / MIN_POINTS_PER_WAVELENGTH
    if h > limit * (1 + 1e-12):
        raise GridTooCoarseError(
            f"Grid spacing h={h:.6g} does not resolve lambda={state.wavelength:.6g}; "
            f"need h <= lambda/{MIN_POINTS_PER_WAVELENGTH} = {limit:.6g}"
        )

    u = state.u
    dt = h / (2.0 * u)
    x = np.linspace(0.0, state.wavelength, points, endpoint=False)
    e0, b0 = state.field_amplitudes

    if method == "analytic":
        cos_theta = np.cos(state.phase(x))
        de_dt = -state.omega * e0 * cos_theta
        db_dt = -state.omega * b0 * cos_theta
        de_dx = state.k * e0 * cos_theta
        db_dx = state.k * b0 * cos_theta
    elif method == "central":
        def fields(xs, t):
            sample = sample_intrinsic_fields(state, xs, t)
            return sample.E, sample.B

        e_next, b_next = fields(x, dt)
        e_prev, b_prev = fields(x, -dt)
        e_right, b_right = fields(x + h, 0.0)
        e_left, b_left = fields(x - h, 0.0)
        de_dt = (e_next - e_prev) / (2 * dt)
        db_dt = (b_next - b_prev) / (2 * dt)
        de_dx = (e_right - e_left) / (2 * h)
        db_dx = (b_right - b_left) / (2 * h)
    else:
        raise DomainError(f"Unknown derivative method '{method}'")

    ampere = de_dt / u ** 2 + db_dx
    faraday = db_dt + de_dx
    return {
        "ampere": float(np.max(np.abs(ampere))),
        "faraday": float(np.max(np.abs(faraday))),
        "h": h,
        "dt": dt,
    }


def convergence_order(state: ParticleState, h: float, refinements: int = 3) -> float:
    """Empirical order of the central-difference residual over h, h/2, h/4, ..."""
    steps = [h / 2 ** i for i in range(refinements)]
    residuals = [verify_field_equations(state, step)["ampere"] for step in steps]
    slope = np.polyfit(np.log(steps), np.log(residuals), 1)[0]
    return float(slope)
