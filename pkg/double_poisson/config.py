"""
Runtime configuration for the double Poisson engine.

Caps are read from the environment (optionally through a ``.env`` file) and can be
overridden per call or from the command line.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from .exceptions import CapExceededError, ConfigurationError

ENV_PREFIX = "DOUBLE_POISSON_"

DEFAULT_MAX_STARS = 3
DEFAULT_MAX_WEIGHT = 8
DEFAULT_MAX_NECKLACE_LENGTH = 12
DEFAULT_MAX_CHAIN_DIM = 20000
DEFAULT_MAX_DEGREE = 12
DEFAULT_SEED = 0
DEFAULT_LOG_LEVEL = "INFO"

_CAP_FIELDS = (
    "max_stars",
    "max_weight",
    "max_necklace_length",
    "max_chain_dim",
    "max_degree",
)


def _read_int(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(f"{ENV_PREFIX}{name}")
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigurationError(f"{ENV_PREFIX}{name} must be an integer, got {raw!r}") from exc
    if value < minimum:
        raise ConfigurationError(f"{ENV_PREFIX}{name} must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class Settings:
    """Resource caps and run parameters."""

    max_stars: int = DEFAULT_MAX_STARS
    max_weight: int = DEFAULT_MAX_WEIGHT
    max_necklace_length: int = DEFAULT_MAX_NECKLACE_LENGTH
    max_chain_dim: int = DEFAULT_MAX_CHAIN_DIM
    max_degree: int = DEFAULT_MAX_DEGREE
    seed: int = DEFAULT_SEED
    log_level: str = DEFAULT_LOG_LEVEL

    def __post_init__(self) -> None:
        for name in _CAP_FIELDS:
            if getattr(self, name) < 0:
                raise ConfigurationError(f"{name} must be non-negative")

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            max_stars=_read_int("MAX_STARS", DEFAULT_MAX_STARS, minimum=0),
            max_weight=_read_int("MAX_WEIGHT", DEFAULT_MAX_WEIGHT, minimum=0),
            max_necklace_length=_read_int("MAX_NECKLACE_LENGTH", DEFAULT_MAX_NECKLACE_LENGTH),
            max_chain_dim=_read_int("MAX_CHAIN_DIM", DEFAULT_MAX_CHAIN_DIM),
            max_degree=_read_int("MAX_DEGREE", DEFAULT_MAX_DEGREE),
            seed=_read_int("SEED", DEFAULT_SEED, minimum=0),
            log_level=os.getenv(f"{ENV_PREFIX}LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
        )

    def with_overrides(self, **overrides: Optional[int]) -> "Settings":
        """Return a copy with every non-None override applied."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **changes)

    def caps(self) -> Dict[str, int]:
        return {name: getattr(self, name) for name in _CAP_FIELDS}

    def check_cap(self, name: str, value: int, what: str) -> None:
        limit = getattr(self, name)
        if value > limit:
            raise CapExceededError(f"{what} = {value} exceeds {name} = {limit}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def get_settings() -> Settings:
    """Load ``.env`` (if present) and build settings from the environment."""
    load_dotenv()
    return Settings.from_env()


def resolve_settings(settings: Optional[Settings]) -> Settings:
    return settings if settings is not None else get_settings()
