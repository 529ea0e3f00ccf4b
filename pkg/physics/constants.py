"""
Unit system and physical constants shared by every physics module.

Two presets exist: natural units (m = c = hbar = e = 1) and SI built from
scipy.constants. Anything else is read from a ``key = value`` constants file.
"""

import logging
import math
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Dict, Union

from scipy import constants as sc

from physics.errors import ConfigError

logger = logging.getLogger(__name__)

# Keys accepted in a constants file, mapped to PhysicalConfig fields
CONFIG_KEYS = ("m", "c", "hbar", "h", "e", "sigma_bar", "rho_bar")


@dataclass(frozen=True)
class PhysicalConfig:
    """Constants of one unit system. Immutable after construction."""

    m: float
    c: float
    hbar: float
    h: float
    e: float
    sigma_bar: float
    rho_bar: float

    def __post_init__(self):
        for name in CONFIG_KEYS:
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ConfigError(f"Constant '{name}' must be finite and strictly positive, got {value}")
        if not math.isclose(self.h, 2 * math.pi * self.hbar, rel_tol=4 * 2.0 ** -52):
            raise ConfigError(f"h must equal 2*pi*hbar, got h={self.h!r}, hbar={self.hbar!r}")

    @property
    def rest_energy(self) -> float:
        return self.m * self.c ** 2

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)

    def dumps(self) -> str:
        """Serialize as ``key = value`` lines with round-trip float text."""
        return "".join(f"{key} = {getattr(self, key)!r}\n" for key in CONFIG_KEYS)


def natural_units() -> PhysicalConfig:
    """m = c = hbar = e = sigma_bar = rho_bar = 1 and h = 2*pi."""
    return PhysicalConfig(m=1.0, c=1.0, hbar=1.0, h=2 * math.pi, e=1.0, sigma_bar=1.0, rho_bar=1.0)


def si_units() -> PhysicalConfig:
    """
    SI constants for the electron.

    sigma_bar is set to e, so the normalized volume V = 1 carries one
    elementary charge.
    """
    return PhysicalConfig(
        m=sc.m_e,
        c=sc.c,
        hbar=sc.hbar,
        h=2 * math.pi * sc.hbar,
        e=sc.e,
        sigma_bar=sc.e,
        rho_bar=1.0,
    )


PRESETS = {"natural": natural_units, "si": si_units}


def preset(name: str) -> PhysicalConfig:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ConfigError(f"Unknown unit preset '{name}', expected one of {sorted(PRESETS)}")


def loads(text: str, base: Union[PhysicalConfig, None] = None) -> PhysicalConfig:
    """
    Parse a constants file body.

    Args:
        text: ``key = value`` lines; blank lines and ``#`` comments are ignored
        base: preset supplying constants the file leaves out (natural units by default)

    Returns:
        The validated PhysicalConfig
    """
    values = (base or natural_units()).to_dict()
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"Line {lineno}: expected 'key = value', got '{raw.strip()}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"Line {lineno}: unknown key '{key}'")
        try:
            values[key] = float(value)
        except ValueError:
            raise ConfigError(f"Line {lineno}: value for '{key}' is not a number: '{value}'")
        seen.add(key)

    # h follows hbar unless the file pins both
    if "hbar" in seen and "h" not in seen:
        values["h"] = 2 * math.pi * values["hbar"]
    return PhysicalConfig(**values)


def load(path: Union[str, Path], base: Union[PhysicalConfig, None] = None) -> PhysicalConfig:
    """Read a constants file from disk."""
    with open(path, "r", encoding="utf-8") as f:
        config = loads(f.read(), base=base)
    logger.info(f"Loaded physical constants from {path}")
    return config
