"""
Engine Settings

Purpose:
    Central configuration for search budgets, extension strategy and logging.

Capabilities:
    - Validated settings model (pydantic)
    - Optional YAML settings file
    - Environment overrides, including values from a local .env file

Usage:
    settings = get_settings()
    chi, witness = exact_chromatic_index(graph, budget=settings.solver_budget)

Notes:
    - Set MGCOLOR_CONFIG to point at a YAML settings file
    - Environment variables win over the file, the file wins over defaults
"""

from enum import Enum
from typing import Any, Dict, Optional
import logging
import os

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from mgcolor.errors import ConfigError

logger = logging.getLogger(__name__)

# Environment variable -> settings field
ENV_OVERRIDES: Dict[str, str] = {
    "MGCOLOR_SOLVER_BUDGET": "solver_budget",
    "MGCOLOR_ORACLE_BUDGET": "oracle_budget",
    "MGCOLOR_GAMMA_MAX_SUBSET": "gamma_max_subset",
    "MGCOLOR_STRATEGY": "strategy",
    "MGCOLOR_LOG_LEVEL": "log_level",
}

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class Strategy(str, Enum):
    """Extension strategies"""
    CASES_FIRST = "paper-first"
    ORACLE_ONLY = "oracle-only"


class EngineSettings(BaseModel):
    """Validated engine settings"""
    solver_budget: int = Field(default=2_000_000, gt=0)
    oracle_budget: int = Field(default=5_000_000, gt=0)
    gamma_max_subset: Optional[int] = Field(default=None, ge=3)
    strategy: Strategy = Strategy.CASES_FIRST
    log_level: str = "WARNING"
    trace_indent: int = Field(default=2, ge=0)

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if level not in logging.getLevelNamesMapping():
            raise ValueError(f"unknown log level: {value}")
        return level


def load_settings(path: Optional[str] = None) -> EngineSettings:
    """
    Load settings from defaults, an optional YAML file and the environment.

    Args:
        path: YAML file path. Falls back to MGCOLOR_CONFIG when omitted.

    Returns:
        Validated EngineSettings

    Raises:
        ConfigError: If the file is unreadable or a value fails validation
    """
    load_dotenv()
    data: Dict[str, Any] = {}

    path = path or os.environ.get("MGCOLOR_CONFIG")
    if path:
        try:
            with open(path) as f:
                loaded = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            raise ConfigError(f"cannot read settings file {path}: {e}") from e
        if not isinstance(loaded, dict):
            raise ConfigError(f"settings file {path} must contain a mapping")
        data.update(loaded)

    for env_name, field_name in ENV_OVERRIDES.items():
        value = os.environ.get(env_name)
        if value:
            data[field_name] = value

    try:
        return EngineSettings(**data)
    except ValidationError as e:
        raise ConfigError(f"invalid settings: {e}") from e


def configure_logging(level: str = "WARNING") -> None:
    """Install a stderr handler; called by the CLI and scripts only"""
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, force=True)


# ============ Factory Functions ============

_settings: Optional[EngineSettings] = None


def get_settings() -> EngineSettings:
    """Get the process-wide settings, loading them on first use"""
    global _settings
    if _settings is None:
        _settings = load_settings()
        logger.debug("settings loaded: %s", _settings.model_dump())
    return _settings


def set_settings(settings: EngineSettings) -> None:
    """Replace the process-wide settings"""
    global _settings
    _settings = settings


def reset_settings() -> None:
    """Forget cached settings (used by tests)"""
    global _settings
    _settings = None
