"""
Configuration management for the stratification toolkit.
"""

import logging
import warnings
from typing import Optional

from pydantic import Field, field_validator, model_validator
from pydantic_settings import BaseSettings

VALID_DIALECTS = ("plain", "tst", "lstar")


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    LOG_LEVEL: str = Field(
        default="WARNING",
        description="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
    )
    LOG_JSON: bool = Field(default=True, description="Emit logs as JSON lines")

    DEFAULT_DIALECT: str = Field(
        default="plain", description="Dialect used when --dialect is not given"
    )
    MERGE_SET_VARS: bool = Field(
        default=False,
        description="Give every L* set variable one type across its occurrences",
    )

    # Feasibility caps for the brute-force searches
    ORACLE_MAX_ASSIGNMENTS: int = Field(
        default=1_000_000,
        description="Maximum assignments the brute-force stratification oracle tries",
        ge=1,
    )
    MAX_VN_RANK: int = Field(
        default=5,
        description="Highest rank n for which V_n is materialized",
        ge=0,
        le=5,
    )
    FREYD_MAX_MORPHISMS: int = Field(
        default=5,
        description="Largest category (in morphisms) the Freyd check accepts",
        ge=1,
        le=8,
    )
    MAX_CONE_CANDIDATES: int = Field(
        default=2_000_000,
        description="Maximum leg tuples enumerated while searching for cones",
        ge=1,
    )
    MAX_CARRIER: int = Field(
        default=12,
        description="Maximum size of a tagged-pair carrier in Rel/Set constructions",
        ge=1,
        le=20,
    )
    ENUMERATION_MAX_MORPHISMS: int = Field(
        default=6,
        description="Largest category (in morphisms) the enumerator generates",
        ge=1,
        le=8,
    )

    JOBS: int = Field(default=1, description="Worker processes for batch runs", ge=1)
    SEED: int = Field(default=0, description="Seed for random formula corpora")

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is valid."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(
                f"Invalid log level. Must be one of: {', '.join(valid_levels)}"
            )
        return v.upper()

    @field_validator("DEFAULT_DIALECT")
    @classmethod
    def validate_dialect(cls, v: str) -> str:
        """Validate the default dialect name."""
        v = v.strip().lower()
        if v not in VALID_DIALECTS:
            raise ValueError(
                f"Invalid dialect. Must be one of: {', '.join(VALID_DIALECTS)}"
            )
        return v

    @model_validator(mode="after")
    def validate_caps(self) -> "Settings":
        """Warn when the Freyd cap outruns what the enumerator can produce."""
        if self.FREYD_MAX_MORPHISMS > self.ENUMERATION_MAX_MORPHISMS:
            warnings.warn(
                f"FREYD_MAX_MORPHISMS={self.FREYD_MAX_MORPHISMS} exceeds "
                f"ENUMERATION_MAX_MORPHISMS={self.ENUMERATION_MAX_MORPHISMS}; "
                "sweeps will stop at the enumeration cap.",
            )
        return self

    model_config = {
        "env_file": ".env",
        "case_sensitive": True,
        "extra": "ignore",
    }


# Global settings instance (singleton)
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """
    Get the global settings instance (singleton pattern).

    Returns:
        Settings: The global settings instance
    """
    global _settings
    if _settings is None:
        _settings = Settings()
        logging.getLogger("stratkit.config").debug(
            "Settings loaded",
            extra={"extra_data": {"default_dialect": _settings.DEFAULT_DIALECT}},
        )
    return _settings


def reset_settings() -> None:
    """
    Reset the global settings instance.
    Useful for testing or reloading configuration.
    """
    global _settings
    _settings = None
