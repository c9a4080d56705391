"""Runtime settings.

Values come from the environment (a `.env` file at the repo root is loaded
first). Every consumer also accepts explicit overrides, so tests never need to
touch the environment.
"""

from __future__ import annotations

import logging
import os
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from .errors import ConfigError


ROOT_DIR = Path(__file__).resolve().parents[1]
DATA_DIR = Path(__file__).resolve().parent / "data"

_ENV_FIELDS = {
    "node_limit": "PATSFORGE_NODE_LIMIT",
    "oracle_max_vars": "PATSFORGE_ORACLE_MAX_VARS",
    "brute_force_max_cells": "PATSFORGE_BRUTE_MAX_CELLS",
    "log_level": "PATSFORGE_LOG_LEVEL",
}


class Settings(BaseModel):
    node_limit: int = Field(default=10_000_000, ge=1)
    oracle_max_vars: int = Field(default=24, ge=1)
    brute_force_max_cells: int = Field(default=12, ge=1)
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.strip().upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"unknown log level {value!r}")
        return level


def load_settings() -> Settings:
    load_dotenv(ROOT_DIR / ".env")
    raw = {field: os.getenv(var) for field, var in _ENV_FIELDS.items()}
    values = {k: v for k, v in raw.items() if v not in (None, "")}
    try:
        return Settings(**values)
    except ValidationError as exc:
        bad = sorted({str(err["loc"][0]) for err in exc.errors()})
        names = ", ".join(_ENV_FIELDS.get(b, b) for b in bad)
        raise ConfigError(f"invalid setting(s): {names}") from exc


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
