"""Exceptions raised by the physics package."""


class DomainError(ValueError):
    """An input lies outside the domain where an operation is defined."""


class GridTooCoarseError(DomainError):
    """A finite-difference grid does not resolve the wavelength."""


class TotalReflectionError(DomainError):
    """A potential at or above the total energy leaves no allowed k-values."""


class ConfigError(ValueError):
    """A constants file could not be parsed or failed validation."""
