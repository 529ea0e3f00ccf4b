"""
Quantum ensemble of free electrons.

At every point the allowed intrinsic states form a band of wavenumbers
[0, k0] with k0 = sqrt(m*E_T)/hbar; psi(r) is the Fourier synthesis of the
k-space amplitude over that band. Potentials widen or narrow the band, a
retarding field analyzer cuts its low-k part away, and normalization ties the
amplitude at one point to the whole domain.

Ensembles are immutable: every operation returns a new one.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid

from physics.constants import PhysicalConfig, natural_units
from physics.errors import DomainError, TotalReflectionError
from physics.utils.quadrature import Interval, integrate, interval_grids, is_point_support, refined_points, richardson_error

logger = logging.getLogger(__name__)

PROFILES = ("uniform", "gaussian", "tabulated")
DEFAULT_GRID = 2049
MIN_GRID = 64
# Positions evaluated per vectorized block
R_CHUNK = 256


@dataclass(frozen=True, eq=False)
class KProfile:
    """Amplitude shape as a function of q = k/k0, so it follows the cutoff when k0 moves."""

    kind: str = "uniform"
    center: float = 0.5
    width: float = 0.15
    q: Optional[np.ndarray] = None
    values: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.kind not in PROFILES:
            raise DomainError(f"Unknown k-profile '{self.kind}', expected one of {PROFILES}")
        if self.kind == "gaussian" and self.width <= 0:
            raise DomainError(f"Gaussian width must be positive, got {self.width}")
        if self.kind == "tabulated" and (self.q is None or self.values is None):
            raise DomainError("A tabulated profile needs both q and values")

    def __call__(self, q: np.ndarray) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        if self.kind == "uniform":
            return np.ones_like(q, dtype=complex)
        if self.kind == "gaussian":
            return np.exp(-0.5 * ((q - self.center) / self.width) ** 2).astype(complex)
        re = np.interp(q, self.q, self.values.real)
        im = np.interp(q, self.q, self.values.imag)
        return re + 1j * im


@dataclass(frozen=True, eq=False)
class QuantumEnsemble:
    E_T: float
    profile: KProfile
    support: Tuple[Interval, ...]
    grid: int = DEFAULT_GRID
    dim: int = 1
    potential: float = 0.0
    scale: complex = 1.0
    norm: float = 1.0
    transmission: float = 1.0
    domain: Optional[Tuple[float, float]] = None
    config: PhysicalConfig = field(default_factory=natural_units)

    @property
    def kinetic_energy(self) -> float:
        return self.E_T - self.potential

    @property
    def k0(self) -> float:
        return cutoff_wavenumber(self.kinetic_energy, self.config)

    @property
    def empty(self) -> bool:
        return len(self.support) == 0

    def amplitude(self, k: np.ndarray) -> np.ndarray:
        """psi0(k); zero outside the support."""
        k = np.asarray(k, dtype=float)
        inside = np.zeros(k.shape, dtype=bool)
        for lo, hi in self.support:
            inside |= (k >= lo) & (k <= hi)
        return np.where(inside, self.scale * self.profile(k / self.k0), 0.0)

    def k_grid(self) -> np.ndarray:
        grids = interval_grids(self.support, self.grid)
        return np.concatenate(grids) if grids else np.array([], dtype=float)


def cutoff_wavenumber(energy: float, config: PhysicalConfig) -> float:
    """k0 = sqrt(m*E)/hbar."""
    return math.sqrt(config.m * energy) / config.hbar


def _measure(k: np.ndarray, dim: int) -> np.ndarray:
    # radial k^2 dk for the 3-D reduction; the 4*pi cancels in every ratio
    return np.ones_like(k) if dim == 1 else k ** 2


def _check_dim(dim: int):
    if dim not in (1, 3):
        raise DomainError(f"Dimension must be 1 or 3 (radial), got {dim}")


def build_free_ensemble(E_T: float, profile: str = "uniform", grid: int = DEFAULT_GRID, config: PhysicalConfig = None,
                        dim: int = 1, center: float = 0.5, width: float = 0.15,
                        support: Optional[Sequence[Interval]] = None) -> QuantumEnsemble:
    """
    Free-electron ensemble with cutoff k0 = sqrt(m*E_T)/hbar.

    Args:
        E_T: total energy, > 0
        profile: 'uniform' (default) or 'gaussian' in q = k/k0
        grid: quadrature nodes per support interval, >= 64
        config: unit system, natural units by default
        dim: 1 for the line, 3 for the radial reduction of the 3-D integral
        center, width: Gaussian parameters in units of k0
        support: disjoint intervals inside [0, k0]; the whole band by default
    """
    config = config or natural_units()
    if E_T <= 0:
        raise DomainError(f"Total energy must be positive, got E_T={E_T}")
    if grid < MIN_GRID:
        raise DomainError(f"Grid needs at least {MIN_GRID} points, got {grid}")
    _check_dim(dim)

    k0 = cutoff_wavenumber(E_T, config)
    if support is None:
        intervals = ((0.0, k0),)
    else:
        intervals = tuple(sorted((float(lo), float(hi)) for lo, hi in support))
        for lo, hi in intervals:
            if lo < 0 or hi > k0 or hi < lo:
                raise DomainError(f"Support interval [{lo}, {hi}] must lie inside [0, k0={k0}]")
        for (_, hi_prev), (lo_next, _) in zip(intervals, intervals[1:]):
            if lo_next < hi_prev:
                raise DomainError("Support intervals must be disjoint")

    return QuantumEnsemble(
        E_T=E_T,
        profile=KProfile(kind=profile, center=center, width=width),
        support=intervals,
        grid=grid,
        dim=dim,
        config=config,
    )


def _synthesize(ensemble: QuantumEnsemble, r: np.ndarray, grid: int) -> np.ndarray:
    dim = ensemble.dim
    prefactor = (2 * math.pi) ** (-0.5) if dim == 1 else 4 * math.pi * (2 * math.pi) ** (-1.5)

    def integrand(k):
        kr = np.outer(r, k)
        kernel = np.exp(1j * kr) if dim == 1 else np.sinc(kr / math.pi)
        return ensemble.amplitude(k)[None, :] * _measure(k, dim)[None, :] * kernel

    return prefactor * integrate(ensemble.support, grid, integrand)


def evaluate_wavefunction(ensemble: QuantumEnsemble, r, grid: Optional[int] = None) -> np.ndarray:
    """
    psi(r) by trapezoid quadrature of the Fourier integral over the support.

    In 3-D the radial reduction 4*pi*int k^2 psi0(k) sin(kr)/(kr) dk is used.
    """
    r = np.atleast_1d(np.asarray(r, dtype=float))
    grid = grid or ensemble.grid
    if ensemble.empty:
        logger.warning("Ensemble support is empty; psi(r) is identically zero")
        return np.zeros(r.shape, dtype=complex)

    chunks = [_synthesize(ensemble, r[i:i + R_CHUNK], grid) for i in range(0, r.size, R_CHUNK)]
    return np.concatenate(chunks)


def quadrature_error_estimate(ensemble: QuantumEnsemble, r) -> np.ndarray:
    """Richardson estimate of the trapezoid error of psi(r) at the ensemble's grid."""
    coarse = evaluate_wavefunction(ensemble, r)
    fine = evaluate_wavefunction(ensemble, r, grid=refined_points(ensemble.grid))
    return richardson_error(coarse, fine)


def apply_potential(ensemble: QuantumEnsemble, V: float) -> QuantumEnsemble:
    """
    Shift the ensemble by a potential step V.

    The cutoff becomes sqrt(m*(E_T - V))/hbar: a negative V widens the band, a
    positive one narrows it. The profile and support are rescaled onto the
    new band.
    """
    remaining = ensemble.kinetic_energy - V
    if remaining <= 0:
        raise TotalReflectionError(
            f"Potential V={V} is not below the available energy {ensemble.kinetic_energy}: no k-values remain"
        )
    ratio = cutoff_wavenumber(remaining, ensemble.config) / ensemble.k0
    support = tuple((lo * ratio, hi * ratio) for lo, hi in ensemble.support)
    return replace(ensemble, potential=ensemble.potential + V, support=support)


@dataclass(frozen=True)
class PotentialProfile:
    """Piecewise-constant V(r): ((lo, hi), V) pieces on disjoint regions, zero elsewhere."""

    pieces: Tuple[Tuple[Interval, float], ...] = ()

    def __post_init__(self):
        regions = sorted(region for region, _ in self.pieces)
        for lo, hi in regions:
            if hi <= lo:
                raise DomainError(f"Potential region [{lo}, {hi}] is empty")
        for (_, hi_prev), (lo_next, _) in zip(regions, regions[1:]):
            if lo_next < hi_prev:
                raise DomainError("Potential regions must be disjoint")

    def value_at(self, r: float) -> float:
        for (lo, hi), V in self.pieces:
            if lo <= r < hi:
                return V
        return 0.0


def local_ensemble(ensemble: QuantumEnsemble, profile: PotentialProfile, r: float) -> QuantumEnsemble:
    """The ensemble of allowed states at position r inside the potential landscape."""
    V = profile.value_at(r)
    return ensemble if V == 0 else apply_potential(ensemble, V)


def _weight(ensemble: QuantumEnsemble, power: int) -> float:
    """int |psi0|^2 k^power over the support, radial measure included."""
    if ensemble.empty:
        return 0.0

    def integrand(k):
        return np.abs(ensemble.amplitude(k)) ** 2 * k ** power * _measure(k, ensemble.dim)

    return float(integrate(ensemble.support, ensemble.grid, integrand))


def retarding_field_collapse(ensemble: QuantumEnsemble, V_rfa: float) -> QuantumEnsemble:
    """
    Keep only members with hbar^2 k^2/m >= V_rfa.

    The surviving ensemble is not renormalized; the fraction of k-space weight
    that passed is multiplied into ``transmission``.
    """
    if V_rfa < 0:
        raise DomainError(f"Analyzer potential must be non-negative, got {V_rfa}")

    threshold = cutoff_wavenumber(V_rfa, ensemble.config)
    support = []
    for lo, hi in ensemble.support:
        if hi == lo:
            if lo >= threshold:
                support.append((lo, hi))
        elif hi > max(lo, threshold):
            support.append((max(lo, threshold), hi))

    collapsed = replace(ensemble, support=tuple(support))
    before = _weight(ensemble, 0)
    passed = _weight(collapsed, 0) / before if before > 0 else 0.0
    if collapsed.empty:
        logger.warning(f"Analyzer at V_rfa={V_rfa} blocks every ensemble member")
    return replace(collapsed, transmission=ensemble.transmission * passed)


def transmission(ensemble: QuantumEnsemble) -> float:
    return ensemble.transmission


def _position_grid(domain: Tuple[float, float], points: int, dim: int) -> np.ndarray:
    a, b = domain
    if not (math.isfinite(a) and math.isfinite(b)) or b <= a:
        raise DomainError(f"Domain must be a finite interval with a < b, got {domain}")
    if dim == 3 and a < 0:
        raise DomainError("A radial domain cannot start below r = 0")
    return np.linspace(a, b, points)


def _position_measure(r: np.ndarray, dim: int) -> np.ndarray:
    return np.ones_like(r) if dim == 1 else 4 * math.pi * r ** 2


def probability(ensemble: QuantumEnsemble, domain: Tuple[float, float], points: int = 2049) -> float:
    """int |psi(r)|^2 dr over the domain."""
    r = _position_grid(domain, points, ensemble.dim)
    psi = evaluate_wavefunction(ensemble, r)
    return float(trapezoid(np.abs(psi) ** 2 * _position_measure(r, ensemble.dim), r))


def normalize(ensemble: QuantumEnsemble, domain: Tuple[float, float], points: int = 2049) -> QuantumEnsemble:
    """
    Rescale so that int |psi|^2 dr = 1 over ``domain``.

    The factor depends on psi everywhere in the domain, so the amplitude at one
    point is fixed by all the others. It is stored as ``norm``.
    """
    if ensemble.empty:
        raise DomainError("Cannot normalize an ensemble with empty support")
    total = probability(ensemble, domain, points)
    if total <= 0:
        raise DomainError("Wavefunction has zero norm over the domain")
    factor = 1.0 / math.sqrt(total)
    return replace(ensemble, scale=ensemble.scale * factor, norm=factor, domain=tuple(domain))


def energy_expectation(ensemble: QuantumEnsemble) -> float:
    """<E> = int |psi0|^2 (hbar^2 k^2/m) dk / int |psi0|^2 dk over the support."""
    if ensemble.empty:
        raise DomainError("Energy expectation of an empty ensemble is undefined")
    config = ensemble.config
    return config.hbar ** 2 / config.m * _weight(ensemble, 2) / _weight(ensemble, 0)


def energy_spread(ensemble: QuantumEnsemble) -> float:
    """Standard deviation of hbar^2 k^2/m; zero when the allowed energy range vanishes."""
    if ensemble.empty:
        raise DomainError("Energy spread of an empty ensemble is undefined")
    mean = energy_expectation(ensemble)
    scale = ensemble.config.hbar ** 2 / ensemble.config.m

    def integrand(k):
        return np.abs(ensemble.amplitude(k)) ** 2 * (scale * k ** 2 - mean) ** 2 * _measure(k, ensemble.dim)

    variance = float(integrate(ensemble.support, ensemble.grid, integrand)) / _weight(ensemble, 0)
    return math.sqrt(variance)


def _spectrum(ensemble: QuantumEnsemble, psi: np.ndarray, r: np.ndarray, k: np.ndarray) -> np.ndarray:
    """Forward transform of sampled psi(r) onto the wavenumbers k."""
    if ensemble.dim == 1:
        kernel = np.exp(-1j * np.outer(k, r))
        return (2 * math.pi) ** (-0.5) * trapezoid(kernel * psi[None, :], r, axis=1)
    kernel = np.sinc(np.outer(k, r) / math.pi)
    return 4 * math.pi * (2 * math.pi) ** (-1.5) * trapezoid(kernel * (psi * r ** 2)[None, :], r, axis=1)


def _spectral_energy(ensemble: QuantumEnsemble, k: np.ndarray, spectrum: np.ndarray) -> float:
    config = ensemble.config
    tabulated = replace(ensemble, profile=_tabulate(ensemble, k, spectrum), scale=1.0)
    return config.hbar ** 2 / config.m * _weight(tabulated, 2) / _weight(tabulated, 0)


def _tabulate(ensemble: QuantumEnsemble, k: np.ndarray, spectrum: np.ndarray) -> KProfile:
    q = k / ensemble.k0
    order = np.argsort(q, kind="stable")
    return KProfile(kind="tabulated", q=q[order], values=np.asarray(spectrum, dtype=complex)[order])


def interaction_free_condition(ensemble: QuantumEnsemble, excluded: Tuple[float, float], domain: Tuple[float, float],
                               points: int = 2001) -> Tuple[QuantumEnsemble, Dict]:
    """
    Condition the ensemble on the absence of any interaction in ``excluded``.

    psi is set to zero on the excluded region, the remaining amplitude is
    transformed back onto the allowed k-values and renormalized. The energy
    expectation is recomputed from that spectrum; its change reflects the
    update of knowledge about the ensemble, not a physical interaction.

    Returns:
        (conditioned ensemble, report dict with energy_before, energy_after,
        delta_E and retained_probability)
    """
    if ensemble.empty:
        raise DomainError("Cannot condition an ensemble with empty support")
    a, b = domain
    lo, hi = excluded
    if lo < a or hi > b or hi < lo:
        raise DomainError(f"Excluded region {excluded} must lie inside the domain {domain}")
    if lo <= a and hi >= b:
        raise DomainError("Excluding the whole domain leaves no ensemble members")

    if hi == lo:
        energy = energy_expectation(ensemble)
        report = {
            "energy_before": energy,
            "energy_after": energy,
            "delta_E": 0.0,
            "retained_probability": 1.0,
            "excluded_region": [lo, hi],
            "domain": [a, b],
            "statistical": True,
        }
        return ensemble, report

    r = _position_grid(domain, points, ensemble.dim)
    psi = evaluate_wavefunction(ensemble, r)
    keep = ~((r >= lo) & (r <= hi))
    projected = np.where(keep, psi, 0.0)

    measure = _position_measure(r, ensemble.dim)
    before = float(trapezoid(np.abs(psi) ** 2 * measure, r))
    after = float(trapezoid(np.abs(projected) ** 2 * measure, r))
    if after <= 0:
        raise DomainError("Wavefunction vanishes outside the excluded region")

    k = ensemble.k_grid()
    spectrum_before = _spectrum(ensemble, psi, r, k)
    spectrum_after = _spectrum(ensemble, projected, r, k)
    energy_before = _spectral_energy(ensemble, k, spectrum_before)
    energy_after = _spectral_energy(ensemble, k, spectrum_after)

    conditioned = replace(ensemble, profile=_tabulate(ensemble, k, spectrum_after / math.sqrt(after)), scale=1.0)
    conditioned = normalize(conditioned, domain)
    report = {
        "energy_before": energy_before,
        "energy_after": energy_after,
        "delta_E": energy_after - energy_before,
        "retained_probability": after / before if before > 0 else 0.0,
        "excluded_region": [lo, hi],
        "domain": [a, b],
        "statistical": True,
    }
    logger.info(f"Interaction-free conditioning on {excluded}: delta_E = {report['delta_E']:.6g}")
    return conditioned, report
